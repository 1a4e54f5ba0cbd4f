"""Run a built-in subject as a standalone program speaking the exit-code protocol.

    python -m failfuzz.subjects NAME < input

Exit 0 complete, 1 incomplete, 2 incorrect, 3 incorrect with the failure
index printed as a decimal on the first line of stderr.
"""

import sys

from ..feedback import encode_exit
from . import UnknownSubject, get_subject


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if len(argv) != 1:
        print("usage: failfuzz-subject NAME < input", file=sys.stderr)
        return 64
    try:
        subject = get_subject(argv[0])
    except UnknownSubject as exc:
        print(exc, file=sys.stderr)
        return 64
    status, err = encode_exit(subject.validate(sys.stdin.buffer.read()))
    if err:
        sys.stderr.write(err)
    return status


if __name__ == "__main__":
    sys.exit(main())
