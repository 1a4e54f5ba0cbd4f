"""failfuzz command line.

    failfuzz list-subjects
    failfuzz fuzz --subject json --alphabet printable --seed 1 --budget-validations 100000 --out corpus
    failfuzz fuzz --command "./parser" --timeout-ms 200 --budget-seconds 60 --out corpus
    failfuzz compare --subject json --budget-validations 100000 --report-dir reports
    failfuzz conformance --subject tinyc
    failfuzz replay --subject json corpus
"""

from __future__ import annotations

import argparse
import random
import shlex
import sys
from pathlib import Path

from . import campaign as cp
from .alphabets import load_alphabet
from .explorer import ExplorerConfig, ExplorerError, MAX_OAPPROX
from .feedback import (DEFAULT_TIMEOUT, FeedbackError, SubprocessValidator,
                       check_conformance, validate_in_process)
from .subjects import SUBJECTS, UnknownSubject, get_subject, random_samples


class UsageError(Exception):
    pass


def _positive_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _positive_float(text):
    value = float(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative number, got {text}")
    return value


def _add_target(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--subject", help="built-in subject name (see list-subjects)")
    g.add_argument("--command", help="external parser speaking the exit-code protocol")
    p.add_argument("--timeout-ms", type=_positive_int, default=int(DEFAULT_TIMEOUT * 1000),
                   help="per-execution timeout for --command (default %(default)s)")


def _add_search(p):
    p.add_argument("--alphabet", default="bytes",
                   help="bytes, printable or file:PATH (default %(default)s)")
    p.add_argument("--oapprox", type=int, choices=range(1, MAX_OAPPROX + 1), default=1)
    p.add_argument("--max-len", type=int, default=1000)
    p.add_argument("--budget-seconds", type=_positive_float)
    p.add_argument("--budget-validations", type=_positive_int)
    p.add_argument("--seed", type=int, help="omit to draw a fresh seed (printed on stderr)")
    p.add_argument("--baseline-max-len", type=int, default=16)
    p.add_argument("--report-dir", type=Path,
                   help="write report.txt, report.json and figures here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="failfuzz", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="cmd", required=True)

    sub.add_parser("list-subjects", help="print the built-in subjects")

    p = sub.add_parser("fuzz", help="run one campaign")
    _add_target(p)
    _add_search(p)
    p.add_argument("--mode", choices=[m.value for m in cp.Mode],
                   default=cp.Mode.FAILURE_FEEDBACK.value)
    p.add_argument("--out", type=Path, help="corpus directory")
    p.add_argument("--trace", type=Path, help="write the explorer trace here")

    p = sub.add_parser("compare", help="failure feedback against the random baseline")
    _add_target(p)
    _add_search(p)
    p.add_argument("--out", type=Path, help="corpus root; one directory per mode")

    p = sub.add_parser("conformance", help="check prefix consistency of a subject")
    _add_target(p)
    p.add_argument("--golden", type=Path, action="append", default=[],
                   help="file holding a known-good input (repeatable)")
    p.add_argument("--samples", type=_positive_int, default=1000,
                   help="random prefixes of the goldens to check (default %(default)s)")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("replay", help="re-validate every file of a corpus")
    _add_target(p)
    p.add_argument("corpus", type=Path)
    return parser


def _validator(args):
    if args.subject is not None:
        return get_subject(args.subject)
    command = shlex.split(args.command)
    if not command:
        raise UsageError("--command is empty")
    return SubprocessValidator(command, timeout=args.timeout_ms / 1000)


def _seed(args):
    if args.seed is None:
        args.seed = random.SystemRandom().randrange(2 ** 32)
        print(f"seed: {args.seed}", file=sys.stderr)
    return args.seed


def _explorer_config(args):
    try:
        alphabet = load_alphabet(args.alphabet)
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    if args.budget_seconds is None and args.budget_validations is None:
        raise UsageError("give --budget-seconds or --budget-validations")
    if args.max_len < 1:
        raise UsageError("--max-len must be at least 1")
    if args.baseline_max_len < 1:
        raise UsageError("--baseline-max-len must be at least 1")
    return ExplorerConfig(alphabet=alphabet, oapprox=args.oapprox, max_len=args.max_len,
                          rng_seed=_seed(args))


def _replay(validator, corpus_dir) -> list:
    """Names of corpus files that do not re-validate Complete."""
    bad = []
    for name, data in cp.read_corpus(corpus_dir).items():
        if not validate_in_process(validator, data).is_complete:
            bad.append(name)
    return bad


def _print_report(report):
    sys.stdout.write(report.to_text())
    print(f"elapsed: {report.elapsed:.3f}", file=sys.stderr)


def cmd_list_subjects(args) -> int:
    width = max(len(name) for name in SUBJECTS)
    for name, subject in SUBJECTS.items():
        print(f"{name:<{width}}  {subject.description}")
    return 0


def cmd_fuzz(args) -> int:
    config = _explorer_config(args)
    validator = _validator(args)
    trace_fh = open(args.trace, "w") if args.trace else None
    try:
        report = cp.run_campaign(cp.CampaignConfig(
            validator, config, budget_seconds=args.budget_seconds,
            budget_validations=args.budget_validations, corpus_dir=args.out,
            mode=cp.Mode(args.mode), baseline_max_len=args.baseline_max_len,
            seed=args.seed,
            trace=(lambda line: trace_fh.write(line + "\n")) if trace_fh else None))
    finally:
        if trace_fh:
            trace_fh.close()
    _print_report(report)
    if args.report_dir:
        from .plotting import plot_growth, plot_lengths
        cp.write_report(report, args.report_dir)
        plot_growth([report], args.report_dir / "growth.png")
        plot_lengths(report, args.report_dir / "lengths.png")
    if args.out is not None and report.unique_valid:
        bad = _replay(validator, args.out)
        if bad:
            raise ExplorerError(f"{len(bad)} corpus files fail re-validation, first {bad[0]}")
    return 0


def cmd_compare(args) -> int:
    config = _explorer_config(args)
    if args.budget_validations is None:
        raise UsageError("compare needs --budget-validations")
    validator = _validator(args)
    result = cp.compare_modes(validator, args.budget_validations, explorer=config,
                              seed=args.seed, corpus_root=args.out,
                              baseline_max_len=args.baseline_max_len,
                              budget_seconds=args.budget_seconds)
    for report in (result.feedback, result.baseline):
        _print_report(report)
        print("---")
    print(f"ratio: {result.ratio:.6g}")
    if args.report_dir:
        from .plotting import plot_growth
        for report in (result.feedback, result.baseline):
            cp.write_report(report, args.report_dir / report.mode.value)
        plot_growth([result.feedback, result.baseline], args.report_dir / "growth.png")
    return 0


def cmd_conformance(args) -> int:
    validator = _validator(args)
    goldens = [p.read_bytes() for p in args.golden]
    if args.subject is not None:
        goldens = list(validator.goldens) + goldens
    if not goldens:
        raise UsageError("--command needs at least one --golden file")
    subject = validator if args.subject is not None else None
    rng = random.Random(args.seed)
    samples = list(goldens)
    if subject is not None:
        samples += random_samples(subject, args.samples, rng)
    else:
        for _ in range(args.samples):
            g = rng.choice(goldens)
            samples.append(g[:rng.randint(0, len(g))])
    result = check_conformance(validator, samples)
    for v in result.violations:
        print(f"violation: sample {v.sample!r} prefix {v.prefix!r} -> {v.verdict}")
    print(f"checked: {result.checked}")
    print(f"violations: {len(result.violations)}")
    return 0 if result.ok else 1


def cmd_replay(args) -> int:
    validator = _validator(args)
    corpus = cp.read_corpus(args.corpus)
    bad = _replay(validator, args.corpus)
    for name in bad:
        print(f"not complete: {name}")
    print(f"files: {len(corpus)}")
    print(f"failed: {len(bad)}")
    return 1 if bad else 0


COMMANDS = {
    "list-subjects": cmd_list_subjects,
    "fuzz": cmd_fuzz,
    "compare": cmd_compare,
    "conformance": cmd_conformance,
    "replay": cmd_replay,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.cmd](args)
    except UsageError as exc:
        parser.error(str(exc))
    except UnknownSubject as exc:
        print(f"failfuzz: error: {exc}", file=sys.stderr)
    except (ExplorerError, FeedbackError, cp.CorpusIOError, OSError, ValueError) as exc:
        print(f"failfuzz: error: {exc}", file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())
