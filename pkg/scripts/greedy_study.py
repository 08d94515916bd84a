#!/usr/bin/env python3
"""Seeded greedy saturation study.

Runs greedy saturation from the empty family over many seeds, verifies
every result, and prints per-seed sizes plus min / median / max. Useful for
comparing randomly grown maximal families against the block construction.
"""

import argparse
import statistics
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from kwise import (  # noqa: E402
    ConstructionParams,
    Family,
    Universe,
    build_family,
    expected_size,
    greedy_saturate,
    is_maximal_kwise,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--n", type=int, default=10)
    ap.add_argument("--runs", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--order", choices=("random", "popcount"), default="random")
    args = ap.parse_args()

    empty = Family(Universe(args.n))
    sizes = []
    print("seed\tsize\tmaximal")
    for r in range(args.runs):
        seed = args.seed + r
        fam = greedy_saturate(empty, args.k, seed, order=args.order)
        ok = is_maximal_kwise(fam, args.k, "complement").ok
        sizes.append(len(fam))
        print(f"{seed}\t{len(fam)}\t{int(ok)}")
        if not ok:
            print(f"seed {seed} produced a non-maximal family", file=sys.stderr)
            return 1

    print(f"# min={min(sizes)} median={statistics.median(sizes)} max={max(sizes)}")
    if args.k >= 3 and args.n >= 2 * (args.k - 1):
        p = ConstructionParams(args.k, args.n)
        built = build_family(p)
        formula = expected_size(p)
        note = "" if formula is None else f" (closed form {formula})"
        print(f"# construction size at (k={args.k}, n={args.n}): {len(built.f)}{note}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
