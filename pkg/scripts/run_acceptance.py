"""Run the ten acceptance criteria and print one PASS/FAIL line each.

    python3 scripts/run_acceptance.py [--only 1 2 7]
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

TESTS = Path(__file__).resolve().parent.parent / "tests"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    args = parser.parse_args()
    sys.path.insert(0, str(TESTS))
    import test_acceptance as acc

    tests = {int(name.split("_")[2]): fn for name, fn in vars(acc).items() if name.startswith("test_criterion_")}
    for number in sorted(tests):
        if args.only and number not in args.only:
            continue
        try:
            tests[number]()
        except AssertionError:
            pass
    return 0 if all(" PASS:" in line for line in acc.RESULTS) else 1


if __name__ == "__main__":
    sys.exit(main())
