"""Token prefix tree for lexers that want byte-precise failure positions."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable


class EmptyToken(ValueError):
    pass


class MatchKind(enum.Enum):
    COMPLETE_TOKEN = "complete"
    VALID_PREFIX = "prefix"
    FAILED_AT = "failed"


@dataclass(frozen=True)
class TrieMatch:
    kind: MatchKind
    position: int = 0
    token_len: int = 0


class _Node:
    __slots__ = ("children", "terminal")

    def __init__(self):
        self.children: dict[int, _Node] = {}
        self.terminal = False

    def __eq__(self, other):
        if not isinstance(other, _Node):
            return NotImplemented
        return self.terminal == other.terminal and self.children == other.children


class TokenTrie:
    """Prefix tree over byte tokens.

    >>> t = TokenTrie([b"do", b"double"])
    >>> t.match_prefix(b"dou").kind
    <MatchKind.VALID_PREFIX: 'prefix'>
    >>> t.match_prefix(b"double").token_len
    6
    """

    def __init__(self, tokens: Iterable[bytes] = ()):
        self.root = _Node()
        self.tokens: set[bytes] = set()
        for tok in tokens:
            self.insert(tok)

    def __len__(self):
        return len(self.tokens)

    def __contains__(self, token: bytes) -> bool:
        return token in self.tokens

    def __eq__(self, other):
        if not isinstance(other, TokenTrie):
            return NotImplemented
        return self.root == other.root

    @property
    def max_token_len(self) -> int:
        return max(map(len, self.tokens), default=0)

    def insert(self, token: bytes) -> "TokenTrie":
        if not token:
            raise EmptyToken("tokens must be nonempty")
        node = self.root
        for b in token:
            node = node.children.setdefault(b, _Node())
        node.terminal = True
        self.tokens.add(bytes(token))
        return self

    def match_prefix(self, data: bytes, start: int = 0) -> TrieMatch:
        """Walk ``data[start:]`` from the root with longest-match preference.

        * input runs out on a node that still has edges: VALID_PREFIX
          (even if a token already ended there, a longer one may follow);
        * otherwise the longest token passed on the walk: COMPLETE_TOKEN;
        * no token passed: FAILED_AT the first byte without an edge.

        ``position`` is always the absolute offset where the walk stopped:
        the first byte without an edge, or ``len(data)`` for VALID_PREFIX.
        Deciding what may follow a complete token is the caller's job.
        """
        node = self.root
        longest = 0
        i = start
        n = len(data)
        while i < n:
            child = node.children.get(data[i])
            if child is None:
                break
            node = child
            i += 1
            if node.terminal:
                longest = i - start
        else:
            if node.children:
                return TrieMatch(MatchKind.VALID_PREFIX, n)
        if longest:
            return TrieMatch(MatchKind.COMPLETE_TOKEN, i, longest)
        return TrieMatch(MatchKind.FAILED_AT, i)
