"""Verdict protocol spoken by every subject, plus adapters to obtain verdicts.

A subject answers each input with one of three statuses:

* ``COMPLETE``   -- the input is accepted.
* ``INCOMPLETE`` -- the input is a valid prefix; some suffix completes it.
* ``INCORRECT``  -- no suffix can fix it.  Optionally carries the byte offset
  where the failure was detected (possibly earlier than the true divergence).

Subjects running as separate processes report verdicts through their exit
status; see :func:`encode_exit` / :func:`decode_exit`.
"""

from __future__ import annotations

import enum
import logging
import subprocess
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Protocol, Sequence, runtime_checkable

log = logging.getLogger(__name__)

EXIT_COMPLETE = 0
EXIT_INCOMPLETE = 1
EXIT_INCORRECT = 2
EXIT_INCORRECT_AT = 3

DEFAULT_TIMEOUT = 0.5
# extra time allowed for killing and reaping a child after its timeout
REAP_GRACE = 1.0


class FeedbackError(Exception):
    """Base class for verdict transport failures."""


class SpawnFailure(FeedbackError):
    pass


class ProtocolViolation(FeedbackError):
    pass


class SubjectPanic(Exception):
    """A validator raised instead of answering.  Recorded, never propagated."""

    def __init__(self, data: bytes, cause: BaseException):
        super().__init__(f"validator raised {type(cause).__name__}: {cause}")
        self.data = data
        self.cause = cause


class Status(enum.Enum):
    COMPLETE = "complete"
    INCOMPLETE = "incomplete"
    INCORRECT = "incorrect"


@dataclass(frozen=True)
class Verdict:
    status: Status
    failure_index: Optional[int] = None

    def __post_init__(self):
        if self.failure_index is not None:
            if self.status is not Status.INCORRECT:
                raise ValueError(f"{self.status.value} verdict cannot carry a failure index")
            if self.failure_index < 0:
                raise ValueError("failure index must be non-negative")

    @classmethod
    def complete(cls) -> "Verdict":
        return COMPLETE

    @classmethod
    def incomplete(cls) -> "Verdict":
        return INCOMPLETE

    @classmethod
    def incorrect(cls, index: Optional[int] = None) -> "Verdict":
        return INCORRECT if index is None else cls(Status.INCORRECT, index)

    @property
    def is_complete(self) -> bool:
        return self.status is Status.COMPLETE

    @property
    def is_incomplete(self) -> bool:
        return self.status is Status.INCOMPLETE

    @property
    def is_incorrect(self) -> bool:
        return self.status is Status.INCORRECT

    @property
    def accepts_prefix(self) -> bool:
        """True for COMPLETE and INCOMPLETE: the input is a valid prefix."""
        return self.status is not Status.INCORRECT

    def __str__(self) -> str:
        if self.failure_index is not None:
            return f"incorrect@{self.failure_index}"
        return self.status.value


COMPLETE = Verdict(Status.COMPLETE)
INCOMPLETE = Verdict(Status.INCOMPLETE)
INCORRECT = Verdict(Status.INCORRECT)


@runtime_checkable
class Validator(Protocol):
    name: str
    alphabet_hint: Optional[Sequence[int]]

    def validate(self, data: bytes) -> Verdict: ...


class FunctionValidator:
    """Adapts a plain ``bytes -> Verdict`` function to the Validator protocol."""

    def __init__(self, func: Callable[[bytes], Verdict], name: Optional[str] = None,
                 alphabet_hint: Optional[Sequence[int]] = None, description: str = ""):
        self.func = func
        self.name = name or func.__name__
        self.alphabet_hint = alphabet_hint
        self.description = description

    def validate(self, data: bytes) -> Verdict:
        return self.func(data)

    def __repr__(self):
        return f"FunctionValidator({self.name!r})"


@dataclass
class ExecutionStats:
    """Counters shared between the adapters and whoever drives them."""

    executions: int = 0
    crashes: int = 0
    timeouts: int = 0
    panics: list = field(default_factory=list)


def validate_in_process(validator: Validator, data: bytes,
                        stats: Optional[ExecutionStats] = None) -> Verdict:
    if stats is not None:
        stats.executions += 1
    try:
        verdict = validator.validate(data)
    except FeedbackError:
        raise
    except Exception as exc:
        panic = SubjectPanic(data, exc)
        log.warning("possible subject bug in %s on %r: %s",
                    getattr(validator, "name", validator), data[:64], panic)
        if stats is not None:
            stats.panics.append(panic)
        return INCORRECT
    if not isinstance(verdict, Verdict):
        raise ProtocolViolation(f"validator returned {verdict!r}, not a Verdict")
    if verdict.failure_index is not None and verdict.failure_index > len(data):
        raise ProtocolViolation(
            f"failure index {verdict.failure_index} beyond input length {len(data)}")
    return verdict


def encode_exit(verdict: Verdict) -> tuple[int, str]:
    """Map a verdict to ``(exit status, stderr text)``."""
    if verdict.is_complete:
        return EXIT_COMPLETE, ""
    if verdict.is_incomplete:
        return EXIT_INCOMPLETE, ""
    if verdict.failure_index is None:
        return EXIT_INCORRECT, ""
    return EXIT_INCORRECT_AT, f"{verdict.failure_index}\n"


def decode_exit(status: int, stderr: str | bytes = "") -> Verdict:
    """Inverse of :func:`encode_exit`.  Negative status is not handled here."""
    if status == EXIT_COMPLETE:
        return COMPLETE
    if status == EXIT_INCOMPLETE:
        return INCOMPLETE
    if status == EXIT_INCORRECT:
        return INCORRECT
    if status == EXIT_INCORRECT_AT:
        if isinstance(stderr, bytes):
            stderr = stderr.decode("utf-8", errors="replace")
        first = stderr.split("\n", 1)[0].strip()
        if not first.isdigit():
            raise ProtocolViolation(f"unparseable failure index line {first!r}")
        return Verdict(Status.INCORRECT, int(first))
    raise ProtocolViolation(f"exit status {status} outside the verdict protocol")


def validate_subprocess(command: Sequence[str], data: bytes, *,
                        timeout: float = DEFAULT_TIMEOUT,
                        stats: Optional[ExecutionStats] = None) -> Verdict:
    """Run ``command`` with ``data`` on stdin and decode its exit status.

    Crashes (termination by signal) and timeouts decode to INCORRECT without
    an index and are tallied separately in ``stats``.
    """
    if stats is not None:
        stats.executions += 1
    try:
        proc = subprocess.Popen(list(command), stdin=subprocess.PIPE,
                                stdout=subprocess.DEVNULL, stderr=subprocess.PIPE)
    except (OSError, ValueError) as exc:
        raise SpawnFailure(f"cannot run {command!r}: {exc}") from exc
    try:
        _, err = proc.communicate(data, timeout=timeout)
    except subprocess.TimeoutExpired:
        proc.kill()
        try:
            proc.communicate(timeout=REAP_GRACE)
        except subprocess.TimeoutExpired:
            log.error("child %d did not exit after kill", proc.pid)
        if stats is not None:
            stats.timeouts += 1
        return INCORRECT
    if proc.returncode < 0:
        log.info("subject crashed with signal %d on %r", -proc.returncode, data[:64])
        if stats is not None:
            stats.crashes += 1
        return INCORRECT
    verdict = decode_exit(proc.returncode, err)
    if verdict.failure_index is not None and verdict.failure_index > len(data):
        raise ProtocolViolation(
            f"failure index {verdict.failure_index} beyond input length {len(data)}")
    return verdict


class SubprocessValidator:
    """Validator backed by an external executable speaking the exit-code protocol."""

    def __init__(self, command: Sequence[str], timeout: float = DEFAULT_TIMEOUT,
                 name: Optional[str] = None, alphabet_hint: Optional[Sequence[int]] = None):
        self.command = list(command)
        self.timeout = timeout
        self.name = name or " ".join(self.command)
        self.alphabet_hint = alphabet_hint
        self.stats = ExecutionStats()

    def validate(self, data: bytes) -> Verdict:
        return validate_subprocess(self.command, data, timeout=self.timeout, stats=self.stats)


@dataclass(frozen=True)
class Violation:
    sample: bytes
    prefix: bytes
    verdict: Verdict


@dataclass
class ConformanceReport:
    checked: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_conformance(validator: Validator, samples: Iterable[bytes]) -> ConformanceReport:
    """Check that every proper prefix of an accepted sample is itself accepted."""
    samples = list(samples)
    if not samples:
        raise ValueError("need at least one sample")
    report = ConformanceReport()
    memo: dict[bytes, Verdict] = {}

    def verdict_of(data):
        if data not in memo:
            memo[data] = validate_in_process(validator, data)
        return memo[data]

    for sample in samples:
        report.checked += 1
        if not verdict_of(sample).accepts_prefix:
            continue
        for cut in range(len(sample)):
            prefix = sample[:cut]
            verdict = verdict_of(prefix)
            if not verdict.accepts_prefix:
                report.violations.append(Violation(sample, prefix, verdict))
    return report
