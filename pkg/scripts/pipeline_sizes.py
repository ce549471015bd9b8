"""Observed output sizes of the S-path approximation pipeline.

Samples uniform random S-paths and records |Q|, the exact distance and the
loose theorem bound for each (n, k) cell; writes a CSV to stdout or --out.

    python3 scripts/pipeline_sizes.py --n 2000 5000 --k 1 2 --trials 5
"""

from __future__ import annotations

import argparse
import csv
import random
import sys
import time
from fractions import Fraction

from disc_kit.freq import parse_fraction
from disc_kit.lemmas import symbols_of
from disc_kit.paths import SPath, approx_path, naive_theorem_bound


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, nargs="+", default=[2000, 5000])
    parser.add_argument("--k", type=int, nargs="+", default=[1, 2])
    parser.add_argument("--symbols", type=int, default=2)
    parser.add_argument("--eps", type=parse_fraction, default=Fraction(1, 5))
    parser.add_argument("--trials", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", type=argparse.FileType("w"), default=sys.stdout)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    symbols = symbols_of(args.symbols)
    writer = csv.writer(args.out)
    writer.writerow(["n", "k", "trial", "mode", "size", "distance", "bound", "seconds"])
    for n in args.n:
        for k in args.k:
            bound = naive_theorem_bound(k, args.symbols, args.eps)
            for trial in range(args.trials):
                path = SPath(symbols, tuple(rng.randrange(args.symbols) for _ in range(n - 1)))
                for adaptive in (False, True):
                    start = time.perf_counter()
                    q, report = approx_path(path, k, args.eps, adaptive=adaptive)
                    writer.writerow([
                        n, k, trial, "adaptive" if adaptive else "default", q.n,
                        f"{float(report.final_distance):.5f}", f"{float(bound):.4g}",
                        f"{time.perf_counter() - start:.2f}",
                    ])
    return 0


if __name__ == "__main__":
    sys.exit(main())
