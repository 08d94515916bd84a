"""Brute-force reference oracles, deliberately independent of the library's
transform and search machinery."""

from itertools import combinations, combinations_with_replacement

import numpy as np


def naive_min_cover(members, n, j_max):
    """Least-members-to-union table by explicit union enumeration: level j
    holds every union of at most j members."""
    size = 1 << n
    out = np.full(size, 255, dtype=np.uint8)
    out[0] = 0
    if not members:
        return out
    mem = np.unique(np.asarray(sorted(members), dtype=np.int64))
    fresh = mem[out[mem] == 255]
    out[fresh] = 1
    current = mem
    for j in range(2, j_max + 1):
        nxt = np.unique(
            np.concatenate([current, (current[:, None] | mem[None, :]).ravel()])
        )
        fresh = nxt[out[nxt] == 255]
        out[fresh] = j
        current = nxt
    return out


def brute_kwise_ok(members, n, k):
    """Definition-literal check: no k members (repetition allowed) may
    union to the full set."""
    full = (1 << n) - 1
    for combo in combinations_with_replacement(members, k):
        u = 0
        for m in combo:
            u |= m
        if u == full:
            return False
    return True


def completable(members, x, n, k):
    """Can at most k-1 members (possibly zero) union with x to the full
    set. Distinct combinations suffice: a multiset union equals the union
    of its support."""
    full = (1 << n) - 1
    if x == full:
        return True
    for j in range(1, k):
        for combo in combinations(members, j):
            u = x
            for m in combo:
                u |= m
            if u == full:
                return True
    return False


def brute_first_unsaturated(members, n, k):
    """First mask (ascending) that could be added without creating a
    k-cover, or None when the family is saturated."""
    memberset = set(members)
    for x in range(1 << n):
        if x in memberset:
            continue
        if not completable(members, x, n, k):
            return x
    return None


def brute_downset_indicators(n):
    """All down-set families over [n], filtering every indicator vector of
    the powerset for downward closure."""
    size = 1 << n
    out = []
    for ind in range(1 << size):
        members = [m for m in range(size) if ind >> m & 1]
        memberset = set(members)
        ok = True
        for m in members:
            rest = m
            while rest:
                bit = rest & -rest
                if (m ^ bit) not in memberset:
                    ok = False
                    break
                rest ^= bit
            if not ok:
                break
        if ok:
            out.append(frozenset(memberset))
    return out
