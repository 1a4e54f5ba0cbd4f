"""A tinyC-like statement language behind a trie-backed lexer.

A run of lowercase letters must be exactly one word token (a keyword or a
single-letter identifier); the trie pins the byte where a word goes wrong.
The parser only sees completed tokens, so a lexically fine token that is
illegal in context is rejected at the token's first byte.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from ..feedback import COMPLETE, INCOMPLETE, Verdict
from ..trie import MatchKind, TokenTrie

KEYWORDS = (b"do", b"while", b"if", b"else")
WORD_TRIE = TokenTrie(KEYWORDS + tuple(bytes([c]) for c in range(0x61, 0x7B)))
PUNCT = frozenset(b"(){};=<+-")
WS = frozenset(b" \t\n\r")
MAX_DEPTH = 100


class Token(NamedTuple):
    kind: str  # "kw", "id", "int" or the punctuation byte itself
    text: bytes
    start: int


class _Incomplete(Exception):
    pass


class _PartialWord(Exception):
    """A word runs into the end of input and may still become a longer token."""

    def __init__(self, start: int, candidates):
        super().__init__(start)
        self.start = start
        self.candidates = candidates


class _Fail(Exception):
    def __init__(self, index: int):
        super().__init__(index)
        self.index = index


def _is_letter(c):
    return 0x61 <= c <= 0x7A


def _is_digit(c):
    return 0x30 <= c <= 0x39


class Lexer:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0
        self._peeked: Optional[Token] = None
        self._peeked_eof = False

    def _scan(self) -> Optional[Token]:
        data, n = self.data, len(self.data)
        i = self.pos
        while i < n and data[i] in WS:
            i += 1
        if i == n:
            self.pos = i
            return None
        c = data[i]
        if _is_letter(c):
            j = i
            while j < n and _is_letter(data[j]):
                j += 1
            word = data[i:j]
            m = WORD_TRIE.match_prefix(data[:j], i)
            if j == n and m.kind is MatchKind.VALID_PREFIX:
                # the word may still grow into any token it prefixes
                raise _PartialWord(i, sorted(t for t in WORD_TRIE.tokens if t.startswith(word)))
            if word not in WORD_TRIE:
                if m.kind is MatchKind.VALID_PREFIX:
                    # delimiter arrived in the middle of a keyword
                    raise _Fail(j)
                raise _Fail(m.position)
            self.pos = j
            return Token("kw" if len(word) > 1 else "id", word, i)
        if _is_digit(c):
            j = i
            while j < n and _is_digit(data[j]):
                j += 1
            # a longer literal is the same token kind, so no need to wait
            self.pos = j
            return Token("int", data[i:j], i)
        if c in PUNCT:
            self.pos = i + 1
            return Token(chr(c), data[i:i + 1], i)
        raise _Fail(i)

    def peek(self) -> Optional[Token]:
        """Next token, or None at a clean end of input."""
        if self._peeked is None and not self._peeked_eof:
            self._peeked = self._scan()
            self._peeked_eof = self._peeked is None
        return self._peeked

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise _Incomplete()
        self._peeked = None
        return tok


class Parser:
    def __init__(self, data: bytes):
        self.lexer = Lexer(data)
        self.depth = 0

    def expect(self, kind: str, text: Optional[bytes] = None) -> Token:
        tok = self.lexer.next()
        if tok.kind != kind or (text is not None and tok.text != text):
            raise _Fail(tok.start)
        return tok

    def program(self):
        self.statement()
        tok = self.lexer.peek()
        if tok is not None:
            raise _Fail(tok.start)

    def _enter(self, tok: Token):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise _Fail(tok.start)

    def statement(self):
        tok = self.lexer.peek()
        if tok is None:
            raise _Incomplete()
        self._enter(tok)
        if tok.text == b"if":
            self.lexer.next()
            self.paren_expr()
            self.statement()
            nxt = self.lexer.peek()
            if nxt is not None and nxt.text == b"else":
                self.lexer.next()
                self.statement()
        elif tok.text == b"while":
            self.lexer.next()
            self.paren_expr()
            self.statement()
        elif tok.text == b"do":
            self.lexer.next()
            self.statement()
            self.expect("kw", b"while")
            self.paren_expr()
            self.expect(";")
        elif tok.kind == "{":
            self.lexer.next()
            while True:
                nxt = self.lexer.peek()
                if nxt is None:
                    raise _Incomplete()
                if nxt.kind == "}":
                    self.lexer.next()
                    break
                self.statement()
        elif tok.kind == ";":
            self.lexer.next()
        else:
            self.expr()
            self.expect(";")
        self.depth -= 1

    def paren_expr(self):
        self.expect("(")
        self.expr()
        self.expect(")")

    def expr(self):
        tok = self.lexer.peek()
        if tok is None:
            raise _Incomplete()
        self._enter(tok)
        if tok.kind == "id":
            # "id = expr" needs one token of lookahead past the identifier
            self.lexer.next()
            nxt = self.lexer.peek()
            if nxt is not None and nxt.kind == "=":
                self.lexer.next()
                self.expr()
            else:
                self._test_rest()
        else:
            self.test()
        self.depth -= 1

    def test(self):
        self.sum()
        self._compare_rest()

    def _test_rest(self):
        # identifier already consumed as the first term
        self._sum_rest()
        self._compare_rest()

    def _compare_rest(self):
        nxt = self.lexer.peek()
        if nxt is not None and nxt.kind == "<":
            self.lexer.next()
            self.sum()

    def sum(self):
        self.term()
        self._sum_rest()

    def _sum_rest(self):
        while True:
            nxt = self.lexer.peek()
            if nxt is None or nxt.kind not in ("+", "-"):
                return
            self.lexer.next()
            self.term()

    def term(self):
        tok = self.lexer.peek()
        if tok is None:
            raise _Incomplete()
        if tok.kind in ("id", "int"):
            self.lexer.next()
        elif tok.kind == "(":
            self._enter(tok)
            self.paren_expr()
            self.depth -= 1
        else:
            raise _Fail(tok.start)


def _parse(data: bytes) -> Verdict:
    try:
        Parser(data).program()
    except _Incomplete:
        return INCOMPLETE
    except _Fail as fail:
        return Verdict.incorrect(fail.index)
    return COMPLETE


def tinyc_subset_validate(data: bytes) -> Verdict:
    try:
        return _parse(data)
    except _PartialWord as partial:
        # Incomplete only if some completion of the word can be continued;
        # a delimiter after the candidate makes it a finished token
        best = 0
        for token in partial.candidates:
            verdict = _parse(data[:partial.start] + token + b" ")
            if verdict.accepts_prefix:
                return INCOMPLETE
            best = max(best, min(verdict.failure_index, len(data)))
        return Verdict.incorrect(best)
