"""Regenerate tests/golden/jpeg_indexed_traces.json (run from the repo root).

Only needed after an intended change to the search order or trace format.
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from test_acceptance import GOLDEN, _trace_digest  # noqa: E402


def main():
    golden = {}
    for seed in range(3):
        out, lines, digest = _trace_digest(seed)
        golden[str(seed)] = {"output": out.hex(), "sha256": digest, "lines": len(lines)}
    path = GOLDEN / "jpeg_indexed_traces.json"
    path.write_text(json.dumps(golden, indent=2) + "\n")
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
