"""Search for instances where deleting vertices beats the 1+2d^k factor.

Runs the subgraph-pair family, prints each failing instance with its two
sides and the repaired constant 2+2d^k, and a summary tally.

    python3 scripts/freq_diff_counterexample.py --seed 42 --count 1000
"""

from __future__ import annotations

import argparse
import sys

from disc_kit.lemmas import check, run_suite


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--count", type=int, default=1000)
    parser.add_argument("--show", type=int, default=5, help="failing instances to print")
    args = parser.parse_args()

    report = run_suite(["FreqDiff"], args.seed, args.count)
    fails = report.failures
    for c in fails[: args.show]:
        g, keep = c.instance.data["g"], c.instance.data["keep"]
        repaired = check("FreqDiffRepaired", c.instance)
        print(f"index {c.instance.index}: n={g.n} edges={sorted(g.info)} keep={keep}")
        print(f"  lhs={c.lhs} stated rhs={c.rhs} repaired rhs={repaired.rhs} ({repaired.verdict})")
    print(f"{len(fails)} of {args.count} instances violate the stated bound")
    return 0


if __name__ == "__main__":
    sys.exit(main())
