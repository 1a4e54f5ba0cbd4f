"""Figures written next to campaign reports."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def plot_growth(reports, path) -> Path:
    """Unique valid inputs against validations spent, one line per report."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6, 4))
    for report in reports:
        xs = [0] + [p[0] for p in report.growth] + [report.total_validations]
        ys = [0] + [p[1] for p in report.growth] + [report.unique_valid]
        ax.step(xs, ys, where="post", label=f"{report.mode.value} ({report.unique_valid})")
    ax.set_xlabel("validations")
    ax.set_ylabel("unique valid inputs")
    ax.set_title(reports[0].subject if reports else "")
    ax.legend(loc="upper left", frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)
    return path


def plot_lengths(report, path) -> Path:
    """Histogram of unique valid input lengths."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6, 4))
    if report.lengths:
        ax.hist(report.lengths, bins=min(30, max(1, len(set(report.lengths)))))
    ax.set_xlabel("input length (bytes)")
    ax.set_ylabel("inputs")
    ax.set_title(f"{report.subject} {report.mode.value}")
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)
    return path
