#!/usr/bin/env python3
"""Print the size table for the default experiment grid.

Columns: construction size, closed-form size (divisible n only), the
exhaustive minimum at n <= 5, and optionally the best greedy size over a
few seeds. Equivalent to `kwise table` with the same flags.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from kwise import size_table  # noqa: E402


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k-min", type=int, default=3)
    ap.add_argument("--k-max", type=int, default=6)
    ap.add_argument("--n-min", type=int, default=4)
    ap.add_argument("--n-max", type=int, default=24)
    ap.add_argument("--runs", type=int, default=0, help="greedy seeds per cell (0 skips)")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rows = size_table(
        range(args.k_min, args.k_max + 1),
        range(args.n_min, args.n_max + 1),
        runs=args.runs,
        base_seed=args.seed,
    )
    cols = ["k", "n", "size", "formula", "oracle", "greedy_min"]
    print("\t".join(cols))
    for r in rows:
        print("\t".join("" if r[c] is None else str(r[c]) for c in cols))
    return 0


if __name__ == "__main__":
    sys.exit(main())
