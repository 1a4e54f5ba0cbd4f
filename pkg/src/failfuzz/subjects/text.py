"""Line-oriented subjects where almost everything is a valid prefix."""

from __future__ import annotations

from ..feedback import COMPLETE, INCOMPLETE, INCORRECT, Verdict


def csv_validate(data: bytes) -> Verdict:
    # any byte string is a valid prefix; a finished file ends in a newline
    if data.endswith(b"\n"):
        return COMPLETE
    return INCOMPLETE


_LINE, _NAME0, _NAME, _AFTER_HEADER, _TEXT = range(5)


def ini_validate(data: bytes) -> Verdict:
    """``[section]`` headers and free-form ``key=value`` lines.

    Only a malformed header is rejected: an empty name, ``[`` or a line
    break inside the brackets, or anything but blanks after the ``]``.
    """
    state = _LINE
    for c in data:
        if state == _LINE:
            if c == 0x5B:  # [
                state = _NAME0
            elif c not in b" \t\r\n":
                state = _TEXT
        elif state in (_NAME0, _NAME):
            if c == 0x5D:  # ]
                if state == _NAME0:
                    return INCORRECT
                state = _AFTER_HEADER
            elif c in b"[\r\n":
                return INCORRECT
            else:
                state = _NAME
        elif state == _AFTER_HEADER:
            if c == 0x0A:
                state = _LINE
            elif c not in b" \t\r":
                return INCORRECT
        elif c == 0x0A:
            state = _LINE
    if data.endswith(b"\n"):
        return COMPLETE
    return INCOMPLETE
