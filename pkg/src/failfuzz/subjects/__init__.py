"""Built-in subjects, each a miniature of one kind of failure feedback.

Grammars for the structured subjects are documented as EBNF under
``grammars/`` next to this file.
"""

from __future__ import annotations

from typing import Callable, Sequence

from ..alphabets import BYTES, PRINTABLE
from ..feedback import FunctionValidator, Verdict
from .json_subset import json_subset_validate
from .simple import (hello_validate, jpeg_marker_validate, jpeg_marker_validate_indexed,
                     length_field_validate, make_literal, make_token_validator)
from .text import csv_validate, ini_validate
from .tinyc import tinyc_subset_validate


class UnknownSubject(KeyError):
    def __str__(self):
        return f"unknown subject {self.args[0]!r} (known: {', '.join(SUBJECTS)})"


class Subject(FunctionValidator):
    """An in-process validator with a few known-good inputs."""

    def __init__(self, func: Callable[[bytes], Verdict], name: str,
                 alphabet_hint: Sequence[int], goldens: Sequence[bytes], description: str):
        super().__init__(func, name, tuple(alphabet_hint), description)
        self.goldens = tuple(goldens)


def _subjects():
    return [
        Subject(hello_validate, "hello", PRINTABLE, [b"HELLO"],
                "accepts only HELLO; last two bytes checked as one chunk"),
        Subject(jpeg_marker_validate, "jpeg", BYTES,
                [b"\xff\xd8\xff\xe0\xff\xd9", b"\xff\xd8\xff\xe0\xff\xdb\xff\xc4\xff\xda\xff\xd9"],
                "two-byte JPEG marker chunks, failures without index"),
        Subject(jpeg_marker_validate_indexed, "jpeg-indexed", BYTES,
                [b"\xff\xd8\xff\xe0\xff\xd9", b"\xff\xd8\xff\xe0\xff\xc0\xff\xd0\xff\xd9"],
                "two-byte JPEG marker chunks, failure index at chunk start"),
        Subject(length_field_validate, "length-field", BYTES,
                [b"\x00\x00", b"\x00\x02\xaa\xbb", b"\x00\x05hello"],
                "big-endian 16-bit length followed by that many bytes"),
        Subject(csv_validate, "csv", PRINTABLE,
                [b"a,b,c\n", b"1,2\n3,4\n", b'"quoted, field",x\n'],
                "any newline-terminated text"),
        Subject(ini_validate, "ini", PRINTABLE,
                [b"[core]\nname = value\n", b"; comment\nkey=v\n", b"[a] \n[b]\nx\n"],
                "section headers and key=value lines"),
        Subject(json_subset_validate, "json", PRINTABLE,
                [b"[{}]", b'{"a": [1, -2.5e3, true, false, null]}', b'["x\\n\\u00e9", {}]',
                 b"[]", b"{}", b'{"k":{"n":0}}'],
                "JSON object or array; trie lexer for keywords; no failure index"),
        Subject(tinyc_subset_validate, "tinyc", PRINTABLE,
                [b"do ; while (a<1) ;", b"{ i = 1; while (i < 10) i = i + 1; }",
                 b"if (a) b = 2; else { c = a - 1; }", b";", b"x=(y+3)<z;"],
                "tinyC statements; failure index at the offending token"),
        Subject(make_token_validator(), "keyword", PRINTABLE,
                [b"while", b"double", b"do", b"null"],
                "exactly one keyword; trie reports where the match failed"),
    ]


SUBJECTS: dict[str, Subject] = {s.name: s for s in _subjects()}


def get_subject(name: str) -> Subject:
    try:
        return SUBJECTS[name]
    except KeyError:
        raise UnknownSubject(name) from None


__all__ = [
    "SUBJECTS", "Subject", "UnknownSubject", "get_subject", "make_literal", "random_samples",
    "make_token_validator", "hello_validate", "jpeg_marker_validate",
    "jpeg_marker_validate_indexed", "length_field_validate", "csv_validate",
    "ini_validate", "json_subset_validate", "tinyc_subset_validate",
]


def random_samples(subject: Subject, count: int, rng) -> list:
    """Random prefixes of the goldens, each followed by up to three random bytes.

    Most samples stay near the accepted language, so the prefix-consistency
    check sees Complete and Incomplete answers as well as Incorrect ones.
    """
    alphabet = subject.alphabet_hint
    out = []
    for _ in range(count):
        golden = rng.choice(subject.goldens)
        cut = rng.randint(0, len(golden))
        tail = bytes(rng.choice(alphabet) for _ in range(rng.randint(0, 3)))
        out.append(golden[:cut] + tail)
    return out
