"""Failure-feedback search: grow a valid prefix one symbol at a time.

The search keeps a stack of accepted steps.  Each step remembers which
symbols were rejected at its position before its own symbol was accepted,
so popping a step (backtracking) resumes enumeration exactly where it left
off.  When the subject reports a failure index, the prefix is cut back to
that offset and the alphabet at the cut widens to multi-byte repair
symbols, bounded by ``oapprox``.

Trace lines (one per event, space separated)::

    S <start_len> <verdict>                         start prefix checked
    V <prefix_len> <symbol_hex> <verdict> <move>    one validation
    B <from_len> <to_len> <popped_hex>[,<hex>...]   backtrack
    R <restart_no>                                  max_len restart
    C <len> <verdict>                               final re-validation

``<move>`` is one of ``done``, ``extend``, ``reject``, ``rewind:<n>``.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, NamedTuple, Optional, Sequence, Union

from .alphabets import BYTES
from .feedback import ExecutionStats, Validator, Verdict, validate_in_process

MAX_OAPPROX = 2
DEFAULT_SYMBOL_CAP = 2 ** 20
# sample by rejection while at least 1/REJECTION_RATIO of the alphabet is untried
REJECTION_RATIO = 64


class ExplorerError(Exception):
    pass


class SearchExhausted(ExplorerError):
    """Every extension reachable under the current alphabet has been tried."""


class AttemptBudgetExhausted(ExplorerError):
    pass


class InvalidStartPrefix(ExplorerError):
    pass


class IndexOutOfRange(ExplorerError):
    pass


class BudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class ExplorerConfig:
    alphabet: tuple = BYTES
    oapprox: int = 1
    max_len: int = 1000
    rng_seed: int = 0
    max_validations: int = 5_000_000
    max_restarts: int = 1000

    def __post_init__(self):
        alphabet = tuple(self.alphabet)
        object.__setattr__(self, "alphabet", alphabet)
        if not alphabet:
            raise ValueError("alphabet must be nonempty")
        if len(set(alphabet)) != len(alphabet):
            raise ValueError("alphabet has duplicate bytes")
        if any(not 0 <= b <= 255 for b in alphabet):
            raise ValueError("alphabet entries must be bytes (0-255)")
        if not 1 <= self.oapprox <= MAX_OAPPROX:
            raise ValueError(f"oapprox must be within 1..{MAX_OAPPROX}")
        if self.max_len < 1:
            raise ValueError("max_len must be at least 1")


@lru_cache(maxsize=16)
def _symbol_table(base: tuple, rs: int) -> tuple:
    table = []
    for r in range(1, rs + 1):
        table.extend(bytes(p) for p in itertools.product(base, repeat=r))
    return tuple(table)


def symbols(base_alphabet: Sequence[int], rs: int, cap: int = DEFAULT_SYMBOL_CAP) -> list:
    """All byte strings of length 1..rs over ``base_alphabet``.

    Ordered by length, then lexicographically in alphabet order.
    """
    if rs < 1:
        raise ValueError("rs must be at least 1")
    base = tuple(base_alphabet)
    count = sum(len(base) ** r for r in range(1, rs + 1))
    if count > cap:
        raise BudgetExceeded(f"{count} symbols exceeds cap {cap}")
    return list(_symbol_table(base, rs))


def choose_symbol(choices: Sequence[bytes], rng: random.Random) -> bytes:
    # rng.random() is several times cheaper than randrange; bias is < n / 2**53
    return choices[int(rng.random() * len(choices))]


@dataclass
class Step:
    symbol: bytes
    seen: set = field(default_factory=set)
    # repair width of the alphabet the symbol was drawn from
    width: int = 1
    # how many members of ``seen`` lie in that alphabet
    dead: int = 0


class ExplorationState:
    """Mutable search state for one generation attempt."""

    def __init__(self, alphabet: Sequence[int], base: bytes = b""):
        self.alphabet = tuple(alphabet)
        self._alphabet_set = frozenset(self.alphabet)
        self.base = bytes(base)
        self.prefix = self.base
        self.steps: list[Step] = []
        self.pending_seen: set = set()
        self._dead = 0
        self.width: Optional[int] = None
        self.set_width(1)

    def set_width(self, width: int, dead: Optional[int] = None):
        if dead is None and width == self.width:
            return
        self.width = width
        self.active_alphabet = _symbol_table(self.alphabet, width)
        self._choices = None
        if dead is None:
            dead = sum(1 for s in self.pending_seen if self.is_active(s))
        self._dead = dead

    def restore(self, seen: set, width: int, dead: Optional[int] = None):
        self.pending_seen = seen
        self.width = None
        self._choices = None
        self.set_width(width, dead)

    def push(self, symbol: bytes):
        """Accept ``symbol`` at the frontier and open a fresh position."""
        self.steps.append(Step(symbol, self.pending_seen, self.width, self._dead))
        self.prefix += symbol
        self.restore(set(), 1, 0)

    def pop(self) -> Step:
        """Undo the last step; its symbol joins the restored seen-set."""
        step = self.steps.pop()
        self.prefix = self.prefix[: len(self.prefix) - len(step.symbol)]
        self.restore(step.seen, step.width, step.dead)
        self.reject(step.symbol)
        return step

    def is_active(self, symbol: bytes) -> bool:
        return len(symbol) <= self.width and all(b in self._alphabet_set for b in symbol)

    def reject(self, symbol: bytes):
        if symbol not in self.pending_seen:
            self.pending_seen.add(symbol)
            if self.is_active(symbol):
                self._dead += 1

    @property
    def remaining(self) -> int:
        return len(self.active_alphabet) - self._dead

    def choices(self) -> list:
        # pending_seen only grows until the next restore, so the previous
        # filtered list is a valid starting point
        seen = self.pending_seen
        base = self.active_alphabet if self._choices is None else self._choices
        self._choices = [s for s in base if s not in seen]
        return self._choices

    def pick(self, rng: random.Random) -> bytes:
        active = self.active_alphabet
        if self.remaining * REJECTION_RATIO >= len(active) and self._choices is None:
            # rejection sampling stays uniform over the remaining choices
            seen = self.pending_seen
            draw = rng.random
            size = len(active)
            while True:
                s = active[int(draw() * size)]
                if s not in seen:
                    return s
        return choose_symbol(self.choices(), rng)


class Done(NamedTuple):
    data: bytes


class Extended(NamedTuple):
    prefix: bytes


class Rejected(NamedTuple):
    symbol: bytes


class Rewound(NamedTuple):
    index: int


Transition = Union[Done, Extended, Rejected, Rewound]


def backtrack(state: ExplorationState) -> ExplorationState:
    """Pop accepted steps until the frontier has an untried symbol."""
    while True:
        if not state.steps:
            raise SearchExhausted("nothing left to try at the start of the input")
        state.pop()
        if state.remaining > 0:
            return state


def apply_verdict(state: ExplorationState, tried: bytes, verdict: Verdict,
                  config: ExplorerConfig) -> Transition:
    n_prefix = state.prefix + tried
    if verdict.is_complete:
        return Done(n_prefix)
    if verdict.is_incomplete:
        state.push(tried)
        return Extended(n_prefix)
    n = verdict.failure_index
    if n is None:
        state.reject(tried)
        return Rejected(tried)
    if n > len(n_prefix):
        raise IndexOutOfRange(f"failure index {n} beyond input length {len(n_prefix)}")
    _rewind(state, n_prefix, tried, n, config)
    return Rewound(n)


def _rewind(state, n_prefix, tried, n, config):
    # the start prefix is fixed; a cut inside it is clamped to its end
    cut = max(n, len(state.base))
    width = min(max(1, len(n_prefix) - cut), config.oapprox)
    if cut >= len(state.prefix):
        state.set_width(width)
        state.reject(tried)
        return
    offset = len(state.base)
    for k, step in enumerate(state.steps):
        end = offset + len(step.symbol)
        if cut < end:
            break
        offset = end
    del state.steps[k:]
    state.prefix = n_prefix[:cut]
    if cut == offset:
        # the symbol at the cut is implicated by the index
        state.restore(step.seen, step.width, step.dead)
        state.set_width(width)
        state.reject(step.symbol)
    else:
        # stored seen-sets cover whole symbols only; a fragment starts fresh
        state.steps.append(Step(step.symbol[: cut - offset], set(), step.width))
        state.restore(set(), width, 0)
    continuation = n_prefix[cut:]
    if len(continuation) <= config.oapprox:
        state.reject(continuation)


class Explorer:
    """Drives generation attempts against one validator.

    Counters (``validations``, ``restarts``, ``backtracks``) accumulate over
    every :meth:`generate` call on the instance.
    """

    def __init__(self, validator: Validator, config: Optional[ExplorerConfig] = None,
                 rng: Optional[random.Random] = None, *,
                 stats: Optional[ExecutionStats] = None,
                 trace: Optional[Callable[[str], object]] = None,
                 max_validations: Optional[int] = None,
                 deadline: Optional[float] = None):
        self.validator = validator
        self.config = config or ExplorerConfig()
        self.rng = rng if rng is not None else random.Random(self.config.rng_seed)
        self.stats = stats if stats is not None else ExecutionStats()
        self.trace = trace
        self.max_validations = (self.config.max_validations if max_validations is None
                                else max_validations)
        self.deadline = deadline
        self.validations = 0
        self.restarts = 0
        self.backtracks = 0
        # exact-input memo; only multi-byte repair can revisit an input
        self._memo: Optional[dict] = {} if self.config.oapprox > 1 else None

    def _validate(self, data: bytes) -> Verdict:
        if self._memo is not None and data in self._memo:
            return self._memo[data]
        if self.validations >= self.max_validations:
            raise AttemptBudgetExhausted(f"validation budget {self.max_validations} spent")
        if self.deadline is not None and time.monotonic() >= self.deadline:
            raise AttemptBudgetExhausted("wall-clock budget spent")
        self.validations += 1
        verdict = validate_in_process(self.validator, data, self.stats)
        if self._memo is not None:
            self._memo[data] = verdict
        return verdict

    def _emit(self, line: str):
        if self.trace is not None:
            self.trace(line)

    def generate(self, start_prefix: bytes = b"") -> bytes:
        config = self.config
        start = bytes(start_prefix)
        if self._memo is not None:
            self._memo.clear()
        if len(start) > config.max_len:
            raise InvalidStartPrefix("start prefix longer than max_len")
        verdict = self._validate(start)
        self._emit(f"S {len(start)} {verdict}")
        if verdict.is_complete:
            return start
        if not verdict.is_incomplete:
            raise InvalidStartPrefix(f"start prefix {start!r} answered {verdict}")

        state = ExplorationState(config.alphabet, start)
        attempt_restarts = 0
        while True:
            if state.remaining == 0:
                before = len(state.prefix)
                popped = [s.symbol.hex() for s in state.steps]
                backtrack(state)
                self.backtracks += 1
                popped = popped[len(state.steps):]
                self._emit(f"B {before} {len(state.prefix)} {','.join(reversed(popped))}")
            sym = state.pick(self.rng)
            n_prefix = state.prefix + sym
            if len(n_prefix) > config.max_len:
                if attempt_restarts >= config.max_restarts:
                    raise AttemptBudgetExhausted(f"more than {config.max_restarts} restarts")
                attempt_restarts += 1
                self.restarts += 1
                self._emit(f"R {attempt_restarts}")
                state = ExplorationState(config.alphabet, start)
                if self._memo is not None:
                    self._memo.clear()
                continue
            verdict = self._validate(n_prefix)
            move = apply_verdict(state, sym, verdict, config)
            if self.trace is not None:
                self._emit(f"V {len(n_prefix) - len(sym)} {sym.hex()} {verdict} {_move_name(move)}")
            if isinstance(move, Done):
                check = validate_in_process(self.validator, move.data, self.stats)
                self._emit(f"C {len(move.data)} {check}")
                if not check.is_complete:
                    raise ExplorerError(
                        f"subject is nondeterministic: {move.data!r} re-validated as {check}")
                if self._memo is not None:
                    self._memo.clear()
                return move.data


def _move_name(move: Transition) -> str:
    if isinstance(move, Rewound):
        return f"rewind:{move.index}"
    return {Done: "done", Extended: "extend", Rejected: "reject"}[type(move)]


def generate(validator: Validator, config: Optional[ExplorerConfig] = None,
             rng: Optional[random.Random] = None, start_prefix: bytes = b"", **kwargs) -> bytes:
    """One-shot convenience wrapper around :class:`Explorer`."""
    return Explorer(validator, config, rng, **kwargs).generate(start_prefix)
