"""Frozen byte alphabets.

``PRINTABLE`` is the 100-byte text alphabet: 0x20-0x7E plus tab, newline,
carriage return, vertical tab and form feed (the same membership as Python's
``string.printable``), ordered by byte value.
"""

from __future__ import annotations

import string
from pathlib import Path

BYTES = tuple(range(256))
PRINTABLE = tuple(sorted(ord(c) for c in string.printable))

assert len(PRINTABLE) == 100


def load_alphabet(spec: str) -> tuple[int, ...]:
    """Resolve ``bytes``, ``printable`` or ``file:PATH``.

    A file alphabet is the set of distinct bytes in the file, in order of
    first appearance.
    """
    if spec == "bytes":
        return BYTES
    if spec == "printable":
        return PRINTABLE
    if spec.startswith("file:"):
        raw = Path(spec[len("file:"):]).read_bytes()
        seen = dict.fromkeys(raw)
        if not seen:
            raise ValueError(f"alphabet file {spec[5:]!r} is empty")
        return tuple(seen)
    raise ValueError(f"unknown alphabet {spec!r} (expected bytes, printable or file:PATH)")
