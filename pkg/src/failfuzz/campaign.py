"""Budgeted fuzzing campaigns, the on-disk corpus and report files.

A campaign runs independent generation attempts until a validation or
wall-clock budget trips, storing every distinct Complete input under its
content hash.  The random baseline draws uniform strings instead.

Report files (format ``failfuzz-report/1``):

``report.txt``
    ``key: value`` lines, first line ``format: failfuzz-report/1``.
``report.json``
    the same keys plus ``growth``, a list of ``[validations, unique_valid]``
    points recorded whenever a new input was stored.

Elapsed time is kept on the in-memory report only, so that two runs with the
same seed and a validation budget write byte-identical files.
"""

from __future__ import annotations

import enum
import hashlib
import json
import os
import random
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Sequence

from .alphabets import PRINTABLE
from .explorer import (AttemptBudgetExhausted, Explorer, ExplorerConfig,
                       SearchExhausted)
from .feedback import ExecutionStats, Validator, validate_in_process

REPORT_FORMAT = "failfuzz-report/1"
REPORT_KEYS = ("subject", "mode", "seed", "unique_valid", "max_len", "mean_len",
               "total_validations", "crashes", "timeouts", "restarts",
               "failed_attempts", "stop_reason")


class CorpusIOError(OSError):
    pass


class Mode(enum.Enum):
    FAILURE_FEEDBACK = "failure-feedback"
    RANDOM_BASELINE = "random-baseline"


@dataclass
class CampaignConfig:
    validator: Validator
    explorer: ExplorerConfig = field(default_factory=lambda: ExplorerConfig(alphabet=PRINTABLE))
    budget_seconds: Optional[float] = None
    budget_validations: Optional[int] = None
    # None keeps the corpus in memory only
    corpus_dir: Optional[Path] = None
    mode: Mode = Mode.FAILURE_FEEDBACK
    baseline_max_len: int = 16
    seed: int = 0
    start_prefix: bytes = b""
    # receives explorer trace lines; each attempt starts with an S line
    trace: Optional[Callable[[str], object]] = None

    def __post_init__(self):
        if self.budget_seconds is None and self.budget_validations is None:
            raise ValueError("a campaign needs a wall-clock or a validation budget")
        if self.budget_seconds is not None and self.budget_seconds < 0:
            raise ValueError("budget_seconds must not be negative")
        if self.budget_validations is not None and self.budget_validations < 0:
            raise ValueError("budget_validations must not be negative")
        if self.baseline_max_len < 1:
            raise ValueError("baseline_max_len must be at least 1")
        self.mode = Mode(self.mode)
        if self.corpus_dir is not None:
            self.corpus_dir = Path(self.corpus_dir)


@dataclass
class CampaignReport:
    subject: str
    mode: Mode
    seed: int
    unique_valid: int = 0
    max_len: int = 0
    mean_len: float = 0.0
    total_validations: int = 0
    crashes: int = 0
    timeouts: int = 0
    restarts: int = 0
    failed_attempts: int = 0
    stop_reason: str = ""
    elapsed: float = 0.0
    growth: list = field(default_factory=list)
    lengths: list = field(default_factory=list)

    def fields(self) -> dict:
        out = {}
        for key in REPORT_KEYS:
            value = getattr(self, key)
            if isinstance(value, Mode):
                value = value.value
            elif isinstance(value, float):
                value = round(value, 6)
            out[key] = value
        return out

    def to_text(self) -> str:
        lines = [f"format: {REPORT_FORMAT}"]
        lines += [f"{k}: {v}" for k, v in self.fields().items()]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {"format": REPORT_FORMAT, **self.fields(),
               "growth": [list(p) for p in self.growth]}
        return json.dumps(doc, indent=2) + "\n"


def corpus_name(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def dedup_and_store(corpus_dir, data: bytes) -> bool:
    """Write ``data`` under its content hash unless it is already there."""
    corpus_dir = Path(corpus_dir)
    path = corpus_dir / corpus_name(data)
    try:
        corpus_dir.mkdir(parents=True, exist_ok=True)
        if path.exists():
            if path.read_bytes() == data:
                return False
            raise CorpusIOError(f"{path} exists with different content")
        fd, tmp = tempfile.mkstemp(dir=corpus_dir, prefix=".tmp-")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(data)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    except CorpusIOError:
        raise
    except OSError as exc:
        raise CorpusIOError(f"cannot store corpus file in {corpus_dir}: {exc}") from exc
    return True


def read_corpus(corpus_dir) -> dict:
    """Map file name to content for every corpus file, sorted by name."""
    corpus_dir = Path(corpus_dir)
    try:
        paths = sorted(p for p in corpus_dir.iterdir()
                       if p.is_file() and not p.name.startswith("."))
        return {p.name: p.read_bytes() for p in paths}
    except OSError as exc:
        raise CorpusIOError(f"cannot read corpus {corpus_dir}: {exc}") from exc


def corpus_metrics(inputs: Sequence[bytes]) -> tuple:
    """(unique_valid, max_len, mean_len) over distinct inputs."""
    lengths = [len(x) for x in set(inputs)]
    if not lengths:
        return 0, 0, 0.0
    return len(lengths), max(lengths), sum(lengths) / len(lengths)


def report_from_corpus(corpus_dir) -> tuple:
    """Recompute the size metrics of a report offline from its corpus."""
    return corpus_metrics(list(read_corpus(corpus_dir).values()))


def derive_seed(seed: int, index: int) -> int:
    digest = hashlib.blake2b(f"{seed}:{index}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


class _Budget:
    def __init__(self, validations: Optional[int], seconds: Optional[float]):
        self.validations = validations
        self.deadline = None if seconds is None else time.monotonic() + seconds
        self.used = 0

    def remaining(self) -> Optional[int]:
        return None if self.validations is None else self.validations - self.used

    def spent(self) -> Optional[str]:
        if self.validations is not None and self.used >= self.validations:
            return "validations"
        if self.deadline is not None and time.monotonic() >= self.deadline:
            return "seconds"
        return None


def run_campaign(config: CampaignConfig) -> CampaignReport:
    validator = config.validator
    report = CampaignReport(getattr(validator, "name", type(validator).__name__),
                            config.mode, config.seed)
    stats = ExecutionStats()
    sub_stats = getattr(validator, "stats", None)
    sub_before = (sub_stats.crashes, sub_stats.timeouts) if sub_stats is not None else (0, 0)
    budget = _Budget(config.budget_validations, config.budget_seconds)
    found: set = set()
    started = time.monotonic()

    def keep(data: bytes):
        if data in found:
            return
        found.add(data)
        if config.corpus_dir is not None:
            dedup_and_store(config.corpus_dir, data)
        report.growth.append((budget.used, len(found)))

    if config.mode is Mode.FAILURE_FEEDBACK:
        _run_explorer(config, budget, stats, report, keep)
    else:
        _run_baseline(config, budget, stats, keep)

    report.stop_reason = budget.spent() or "budget"
    report.total_validations = budget.used
    report.unique_valid, report.max_len, report.mean_len = corpus_metrics(list(found))
    report.lengths = sorted(len(x) for x in found)
    report.crashes = len(stats.panics) + stats.crashes
    report.timeouts = stats.timeouts
    if sub_stats is not None:
        report.crashes += sub_stats.crashes - sub_before[0]
        report.timeouts += sub_stats.timeouts - sub_before[1]
    report.elapsed = time.monotonic() - started
    return report


def _run_explorer(config, budget, stats, report, keep):
    base = config.explorer
    index = 0
    while budget.spent() is None:
        cfg = ExplorerConfig(alphabet=base.alphabet, oapprox=base.oapprox, max_len=base.max_len,
                             rng_seed=derive_seed(config.seed, index),
                             max_validations=base.max_validations,
                             max_restarts=base.max_restarts)
        index += 1
        limit = cfg.max_validations
        if budget.remaining() is not None:
            limit = min(limit, budget.remaining())
        explorer = Explorer(config.validator, cfg, stats=stats, trace=config.trace,
                            max_validations=limit, deadline=budget.deadline)
        failed = False
        try:
            data = explorer.generate(config.start_prefix)
        except SearchExhausted:
            # a dead search costs its validations; the next one gets a fresh seed
            data, failed = None, True
        except AttemptBudgetExhausted:
            data = None
        budget.used += explorer.validations
        report.restarts += explorer.restarts
        if data is None:
            # an attempt cut short by the campaign budget is not a failure
            if failed or budget.spent() is None:
                report.failed_attempts += 1
            continue
        keep(data)


def _run_baseline(config, budget, stats, keep):
    rng = random.Random(config.seed)
    alphabet = config.explorer.alphabet
    while budget.spent() is None:
        size = rng.randint(1, config.baseline_max_len)
        data = bytes(rng.choice(alphabet) for _ in range(size))
        budget.used += 1
        if validate_in_process(config.validator, data, stats).is_complete:
            keep(data)


@dataclass
class Comparison:
    feedback: CampaignReport
    baseline: CampaignReport

    @property
    def ratio(self) -> float:
        return self.feedback.unique_valid / max(1, self.baseline.unique_valid)


def compare_modes(validator: Validator, budget_validations: int, *,
                  explorer: Optional[ExplorerConfig] = None, seed: int = 0,
                  corpus_root=None, baseline_max_len: int = 16,
                  budget_seconds: Optional[float] = None) -> Comparison:
    """Run both modes on the same validation budget and alphabet."""
    explorer = explorer or ExplorerConfig(alphabet=PRINTABLE)
    reports = {}
    for mode in Mode:
        corpus = None if corpus_root is None else Path(corpus_root) / mode.value
        reports[mode] = run_campaign(CampaignConfig(
            validator, explorer, budget_seconds=budget_seconds,
            budget_validations=budget_validations, corpus_dir=corpus, mode=mode,
            baseline_max_len=baseline_max_len, seed=seed))
    return Comparison(reports[Mode.FAILURE_FEEDBACK], reports[Mode.RANDOM_BASELINE])


def write_report(report: CampaignReport, out_dir) -> list:
    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        paths = [out_dir / "report.txt", out_dir / "report.json"]
        paths[0].write_text(report.to_text())
        paths[1].write_text(report.to_json())
    except OSError as exc:
        raise CorpusIOError(f"cannot write report to {out_dir}: {exc}") from exc
    return paths
