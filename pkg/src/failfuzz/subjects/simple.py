"""Byte-level subjects: each one exercises a single feedback pattern."""

from __future__ import annotations

from ..feedback import COMPLETE, INCOMPLETE, INCORRECT, Verdict
from ..trie import MatchKind, TokenTrie


def hello_validate(data: bytes) -> Verdict:
    """Accept exactly ``HELLO``.

    The first three bytes are checked one at a time; the last two are
    compared as one chunk, so ``HELX`` is still a valid prefix.
    """
    if len(data) > 5:
        return INCORRECT
    for i, expected in enumerate(b"HEL"):
        if i >= len(data):
            return INCOMPLETE
        if data[i] != expected:
            return INCORRECT
    if len(data) < 5:
        return INCOMPLETE
    if data[3:5] != b"LO":
        return INCORRECT
    return COMPLETE


SOI = b"\xff\xd8"
SOF0 = b"\xff\xc0"
SOF2 = b"\xff\xc2"
DHT = b"\xff\xc4"
DQT = b"\xff\xdb"
DRI = b"\xff\xdd"
SOS = b"\xff\xda"
RST0 = b"\xff\xd0"
APP0 = b"\xff\xe0"
EOI = b"\xff\xd9"

MARKERS = (SOI, SOF0, SOF2, DHT, DQT, DRI, SOS, RST0, APP0, EOI)
BODY_MARKERS = frozenset((SOF0, SOF2, DHT, DQT, DRI, SOS, RST0, EOI))


def _scan_markers(data: bytes):
    """Return ``(verdict, offset of the offending chunk or None)``.

    Frame: SOI APP0 {SOF0|SOF2|DHT|DQT|DRI|SOS|RST0} EOI, read two bytes at
    a time.
    """
    n = len(data)
    pos = 0
    while pos + 2 <= n:
        chunk = data[pos:pos + 2]
        if pos == 0:
            ok = chunk == SOI
        elif pos == 2:
            ok = chunk == APP0
        else:
            ok = chunk in BODY_MARKERS
        if not ok:
            return INCORRECT, pos
        pos += 2
        if chunk == EOI:
            if pos == n:
                return COMPLETE, None
            return INCORRECT, pos
    return INCOMPLETE, None


def jpeg_marker_validate(data: bytes) -> Verdict:
    return _scan_markers(data)[0]


def jpeg_marker_validate_indexed(data: bytes) -> Verdict:
    verdict, offset = _scan_markers(data)
    if offset is None:
        return verdict
    return Verdict.incorrect(offset)


def length_field_validate(data: bytes) -> Verdict:
    if len(data) < 2:
        return INCOMPLETE
    length = (data[0] << 8) | data[1]
    if len(data) < 2 + length:
        return INCOMPLETE
    if len(data) == 2 + length:
        return COMPLETE
    return INCORRECT


def make_literal(target: bytes):
    """A subject accepting only ``target``, rejecting at the first wrong byte."""
    target = bytes(target)

    def literal_validate(data: bytes) -> Verdict:
        if len(data) > len(target):
            return INCORRECT
        for i, b in enumerate(data):
            if b != target[i]:
                return INCORRECT
        return COMPLETE if len(data) == len(target) else INCOMPLETE

    return literal_validate


KEYWORDS = (b"do", b"double", b"while", b"if", b"else", b"for", b"return",
            b"true", b"false", b"null")


def make_token_validator(tokens=KEYWORDS):
    """A lexer for exactly one token, reporting where the token match failed."""
    trie = TokenTrie(tokens)

    def token_validate(data: bytes) -> Verdict:
        if data in trie:
            return COMPLETE
        m = trie.match_prefix(data)
        if m.kind is MatchKind.VALID_PREFIX:
            return INCOMPLETE
        # the walk died at m.position, past any shorter complete token
        return Verdict.incorrect(m.position)

    token_validate.trie = trie
    return token_validate
