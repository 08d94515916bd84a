"""Construction-independent generators and probes.

Exhaustive down-set enumeration at tiny n (the complement world of any
maximal family is a down-set, so down-sets are the whole search space), an
exact minimum-size oracle on top of it, seeded greedy saturation at medium
n, cube-distance reports against block partitions, and an aggregate size
table.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from .construction import BlockPartition, ConstructionParams, build_family, expected_size
from .setcore import (
    COVER_MAX_J,
    CoverSearcher,
    Family,
    SetMask,
    Universe,
    complement_family,
    cover_table_from_indicator,
    maximal_elements,
)
from .verifier import check_kwise, is_maximal_kwise

DOWNSET_MAX_N = 5
GREEDY_MAX_N = 20
MINIMIZE_MAX_N = 8
_GREEDY_TABLE_N = 14


@dataclass(frozen=True)
class OracleResult:
    """Exact minimum size of a maximal k-wise intersecting family over [n],
    with the number of minimum achievers and one achiever (direct world)."""

    k: int
    n: int
    f_k_n: int
    extremal_count: int
    sample_extremal: Family


@dataclass(frozen=True)
class CubeReport:
    """How far a family sits from the union of its partition's cubes."""

    partition: BlockPartition
    q_size: int
    distance: int


def enumerate_downsets(u: Universe) -> Iterator[Family]:
    """Yield every down-set over the universe exactly once.

    Down-sets correspond one-to-one to antichains of maximal elements;
    antichains are extended in lexicographic mask order. Dedekind growth
    (168 down-sets at n=4, 7581 at n=5) caps this at n <= 5.
    """
    if u.n > DOWNSET_MAX_N:
        raise ValueError(f"down-set enumeration needs n <= {DOWNSET_MAX_N}, got n={u.n}")
    size = u.num_masks

    def closure(tops: list[SetMask]) -> set[SetMask]:
        out = set(tops)
        stack = list(tops)
        while stack:
            m = stack.pop()
            rest = m
            while rest:
                bit = rest & -rest
                child = m ^ bit
                if child not in out:
                    out.add(child)
                    stack.append(child)
                rest ^= bit
        return out

    def extend(tops: list[SetMask], start: int) -> Iterator[Family]:
        yield Family(u, closure(tops))
        for m in range(start, size):
            incomparable = True
            for t in tops:
                joined = m | t
                if joined == m or joined == t:
                    incomparable = False
                    break
            if incomparable:
                tops.append(m)
                yield from extend(tops, m + 1)
                tops.pop()

    yield from extend([], 0)


def oracle_min_size(k: int, u: Universe) -> OracleResult:
    """Filter every complement-world down-set through the verifier and
    report the minimum size with its achiever count."""
    if k < 2:
        raise ValueError(f"arity k must be >= 2, got {k}")
    if u.n > DOWNSET_MAX_N:
        raise ValueError(f"exhaustive oracle needs n <= {DOWNSET_MAX_N}, got n={u.n}")
    best: Family | None = None
    count = 0
    for g in enumerate_downsets(u):
        if not is_maximal_kwise(g, k, world="complement", backend="tuples").ok:
            continue
        if best is None or len(g) < len(best):
            best, count = g, 1
        elif len(g) == len(best):
            count += 1
    assert best is not None  # the complement of the star is always maximal
    return OracleResult(k, u.n, len(best), count, complement_family(best))


def greedy_saturate(g0: Family, k: int, order_seed: int, *, order: str = "random") -> Family:
    """Grow g0 (complement world) into a maximal family.

    Candidate masks are scanned in a seed-determined order ("random" is a
    seeded shuffle of all masks, "popcount" visits larger sets first with
    ties by mask value); any mask whose addition keeps the no-k-cover
    property is added, until a full pass adds nothing.
    """
    u = g0.universe
    if u.n > GREEDY_MAX_N:
        raise ValueError(f"greedy saturation needs n <= {GREEDY_MAX_N}, got n={u.n}")
    if k < 2:
        raise ValueError(f"arity k must be >= 2, got {k}")
    if not check_kwise(g0, k).ok:
        raise ValueError("seed family is not k-wise intersecting in the complement world")
    size, full = u.num_masks, u.full
    if order == "random":
        cand = list(range(size))
        random.Random(order_seed).shuffle(cand)
    elif order == "popcount":
        cand = sorted(range(size), key=lambda m: (-m.bit_count(), m))
    else:
        raise ValueError(f"unknown candidate order {order!r}")

    members: set[SetMask] = set(g0.members)
    if u.n <= _GREEDY_TABLE_N and k - 1 <= COVER_MAX_J:
        # exact coverability table, rebuilt after every insertion
        ind = np.zeros(size, dtype=np.int64)
        if members:
            ind[np.fromiter(members, dtype=np.int64, count=len(members))] = 1
        sup = cover_table_from_indicator(ind, u, k - 1).sup
        while True:
            added = False
            for x in cand:
                if x in members:
                    continue
                if sup[full ^ x] <= k - 1:
                    continue
                members.add(x)
                ind[x] = 1
                sup = cover_table_from_indicator(ind, u, k - 1).sup
                added = True
            if not added:
                break
    else:
        # per-pass snapshot filter (coverability only grows, so a covered
        # verdict from the snapshot stays valid) with an exact search
        # against the current antichain for the rest
        tops = list(maximal_elements(Family(u, members)).members)
        searcher = CoverSearcher(tops, u.n)
        while True:
            added = False
            snapshot = None
            if members:
                ind = np.zeros(size, dtype=np.int64)
                ind[np.fromiter(members, dtype=np.int64, count=len(members))] = 1
                snapshot = cover_table_from_indicator(ind, u, min(k - 1, COVER_MAX_J)).sup
            for x in cand:
                if x in members:
                    continue
                target = full ^ x
                if target == 0:
                    continue  # adding the full set always makes a 1-cover
                if snapshot is not None and snapshot[target] <= k - 1:
                    continue
                if searcher.find(target, k - 1) is not None:
                    continue
                members.add(x)
                if not any(x | t == t for t in tops):
                    tops = [t for t in tops if t | x != x] + [x]
                    searcher = CoverSearcher(tops, u.n)
                added = True
            if not added:
                break
    return Family(u, members)


def cube_distance(f: Family, bp: BlockPartition) -> CubeReport:
    """Count the members of f lying outside every single block's powerset."""
    if bp.universe != f.universe:
        raise ValueError("partition and family universes differ")
    blocks = bp.blocks
    outside = 0
    for m in f.members:
        if all(m & ~b for b in blocks):
            outside += 1
    # the cubes pairwise intersect in exactly the empty set
    q_size = sum(1 << b.bit_count() for b in blocks) - (len(blocks) - 1)
    return CubeReport(bp, q_size, outside)


def _partitions(
    elems: tuple[int, ...], sizes: tuple[int, ...]
) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Unordered partitions of elems with the given block size multiset,
    each exactly once: the smallest remaining element picks its block."""
    if not elems:
        yield ()
        return
    first, rest = elems[0], elems[1:]
    tried: set[int] = set()
    for pos, s in enumerate(sizes):
        if s in tried:
            continue
        tried.add(s)
        remaining = sizes[:pos] + sizes[pos + 1 :]
        for chosen in combinations(rest, s - 1):
            block = (first, *chosen)
            left = tuple(e for e in rest if e not in chosen)
            for tail in _partitions(left, remaining):
                yield (block, *tail)


def minimize_cube_distance(f: Family, num_blocks: int) -> CubeReport:
    """Exhaustive minimum of cube_distance over all unordered partitions of
    the universe into num_blocks near-equal blocks (n <= 8 only; the space
    is super-exponential)."""
    u = f.universe
    if u.n > MINIMIZE_MAX_N:
        raise ValueError(f"partition minimisation needs n <= {MINIMIZE_MAX_N}, got n={u.n}")
    if not 1 <= num_blocks <= u.n:
        raise ValueError(f"need between 1 and {u.n} blocks, got {num_blocks}")
    q, r = divmod(u.n, num_blocks)
    sizes = tuple([q + 1] * r + [q] * (num_blocks - r))
    best: CubeReport | None = None
    for blocks in _partitions(tuple(range(1, u.n + 1)), sizes):
        ordered = sorted(blocks, key=lambda b: (-len(b), b[0]))
        bp = BlockPartition(
            u,
            tuple(sum(1 << (e - 1) for e in b) for b in ordered),
            tuple(b[0] for b in ordered),
        )
        rep = cube_distance(f, bp)
        if best is None or rep.distance < best.distance:
            best = rep
    assert best is not None
    return best


def size_table(
    ks: Sequence[int],
    ns: Sequence[int],
    *,
    runs: int = 0,
    base_seed: int = 0,
    order: str = "random",
) -> list[dict]:
    """One row per (k, n): construction size, closed-form size, exhaustive
    minimum, and the best greedy size over `runs` seeds. Infeasible cells
    stay None."""
    rows = []
    for k in ks:
        for n in ns:
            row: dict = {
                "k": k,
                "n": n,
                "size": None,
                "formula": None,
                "oracle": None,
                "greedy_min": None,
            }
            if k >= 3 and n >= 2 * (k - 1):
                p = ConstructionParams(k, n)
                row["size"] = len(build_family(p).f)
                row["formula"] = expected_size(p)
            if k >= 2 and n <= DOWNSET_MAX_N:
                row["oracle"] = oracle_min_size(k, Universe(n)).f_k_n
            if runs >= 1 and k >= 2 and n <= GREEDY_MAX_N:
                empty = Family(Universe(n))
                row["greedy_min"] = min(
                    len(greedy_saturate(empty, k, base_seed + r, order=order))
                    for r in range(runs)
                )
            rows.append(row)
    return rows
