"""Regenerate the CLI golden files under tests/golden.

Review the diff of the regenerated files before committing them.
"""

import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from test_acceptance import GOLDEN, GOLDEN_CASES, run_golden_case  # noqa: E402


def main() -> int:
    GOLDEN.mkdir(exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        for name, argv in GOLDEN_CASES:
            data = run_golden_case(argv, Path(tmp))
            (GOLDEN / f"{name}.json").write_bytes(data)
            print(f"wrote {name}.json ({len(data)} bytes)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
