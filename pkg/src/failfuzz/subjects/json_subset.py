"""JSON subset with a trie lexer for ``true``, ``false`` and ``null``.

The top-level value must be an object or an array, so the shortest accepted
documents are ``[]`` and ``{}``.  Strings are printable ASCII with the usual
escapes.  Nothing may follow the closing bracket.  Failures carry no index;
since the scan is byte-by-byte the last byte is always the culprit.
"""

from __future__ import annotations

from ..feedback import COMPLETE, INCOMPLETE, INCORRECT, Verdict
from ..trie import MatchKind, TokenTrie

KEYWORD_TRIE = TokenTrie([b"true", b"false", b"null"])

WS = frozenset(b" \t\n\r")
DIGITS = frozenset(b"0123456789")
HEX = frozenset(b"0123456789abcdefABCDEF")
ESCAPES = frozenset(b'"\\/bfnrt')

(TOP, VALUE, VALUE_OR_CLOSE, KEY, KEY_OR_CLOSE, COLON, AFTER_VALUE, DONE,
 STRING, ESCAPE, UNICODE,
 NUM_SIGN, NUM_ZERO, NUM_INT, NUM_DOT, NUM_FRAC, NUM_E, NUM_ESIGN, NUM_EXP,
 KEYWORD) = range(20)

# number states after which the number may end
NUM_FINAL = frozenset((NUM_ZERO, NUM_INT, NUM_FRAC, NUM_EXP))


def json_subset_validate(data: bytes) -> Verdict:
    stack = []
    state = TOP
    in_key = False
    hex_left = 0
    kw_start = 0
    i = 0
    n = len(data)
    while i < n:
        c = data[i]
        if state == STRING:
            if c == 0x22:
                state = COLON if in_key else AFTER_VALUE
            elif c == 0x5C:
                state = ESCAPE
            elif not 0x20 <= c <= 0x7E:
                return INCORRECT
        elif state == ESCAPE:
            if c == 0x75:  # u
                state, hex_left = UNICODE, 4
            elif c in ESCAPES:
                state = STRING
            else:
                return INCORRECT
        elif state == UNICODE:
            if c not in HEX:
                return INCORRECT
            hex_left -= 1
            if not hex_left:
                state = STRING
        elif state == KEYWORD:
            m = KEYWORD_TRIE.match_prefix(data[kw_start:i + 1])
            if m.kind is MatchKind.COMPLETE_TOKEN and m.token_len == i + 1 - kw_start:
                state = AFTER_VALUE
            elif m.kind is not MatchKind.VALID_PREFIX:
                return INCORRECT
        elif state >= NUM_SIGN:
            nxt = _number_step(state, c)
            if nxt is None:
                if state not in NUM_FINAL:
                    return INCORRECT
                # number ended; rescan this byte as whatever follows a value
                state = AFTER_VALUE
                continue
            state = nxt
        elif c in WS and state != DONE:
            pass
        elif state == TOP:
            if c == 0x5B:
                stack.append(0x5D)
                state = VALUE_OR_CLOSE
            elif c == 0x7B:
                stack.append(0x7D)
                state = KEY_OR_CLOSE
            else:
                return INCORRECT
        elif state in (VALUE, VALUE_OR_CLOSE):
            if c == 0x5D and state == VALUE_OR_CLOSE:
                state = _close(stack)
            elif c == 0x5B:
                stack.append(0x5D)
                state = VALUE_OR_CLOSE
            elif c == 0x7B:
                stack.append(0x7D)
                state = KEY_OR_CLOSE
            elif c == 0x22:
                state, in_key = STRING, False
            elif c == 0x2D:
                state = NUM_SIGN
            elif c == 0x30:
                state = NUM_ZERO
            elif c in DIGITS:
                state = NUM_INT
            elif KEYWORD_TRIE.match_prefix(data[i:i + 1]).kind is MatchKind.VALID_PREFIX:
                state, kw_start = KEYWORD, i
            else:
                return INCORRECT
        elif state in (KEY, KEY_OR_CLOSE):
            if c == 0x22:
                state, in_key = STRING, True
            elif c == 0x7D and state == KEY_OR_CLOSE:
                state = _close(stack)
            else:
                return INCORRECT
        elif state == COLON:
            if c != 0x3A:
                return INCORRECT
            state = VALUE
        elif state == AFTER_VALUE:
            if c == 0x2C:
                state = VALUE if stack[-1] == 0x5D else KEY
            elif c == stack[-1]:
                state = _close(stack)
            else:
                return INCORRECT
        else:  # DONE
            return INCORRECT
        i += 1
    return COMPLETE if state == DONE else INCOMPLETE


def _close(stack):
    stack.pop()
    return AFTER_VALUE if stack else DONE


def _number_step(state, c):
    digit = c in DIGITS
    if state == NUM_SIGN:
        if c == 0x30:
            return NUM_ZERO
        return NUM_INT if digit else None
    if state in (NUM_ZERO, NUM_INT):
        if digit:
            return NUM_INT if state == NUM_INT else None
        if c == 0x2E:
            return NUM_DOT
        if c in b"eE":
            return NUM_E
        return None
    if state in (NUM_DOT, NUM_FRAC):
        if digit:
            return NUM_FRAC
        if state == NUM_FRAC and c in b"eE":
            return NUM_E
        return None
    if state == NUM_E:
        if c in b"+-":
            return NUM_ESIGN
        return NUM_EXP if digit else None
    # NUM_ESIGN, NUM_EXP
    return NUM_EXP if digit else None
