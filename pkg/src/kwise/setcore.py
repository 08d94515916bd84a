"""Bitmask subset-lattice primitives: universes, families, cover tables.

A set over the ground set {1, .., n} is an n-bit mask with element i stored
in bit i - 1. Families are immutable, deduplicated, sorted mask collections.
The cover table records, for every mask of the lattice at once, how many
family members are needed to union up to exactly that mask; a superset-min
closure of it answers "do some <= j members cover this target".
"""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

SetMask = int

ALGEBRA_MAX_N = 62
TABLE_MAX_N = 24
COVER_MAX_J = 8

_NONE = 255
# Tuple counts in the transform domain can exceed 64 bits, so the DP runs
# modulo two 31-bit primes; a count is treated as zero only when both
# residues vanish.
_PRIMES = (2_147_483_647, 2_147_483_629)


class Universe:
    """Ground set {1, .., n}, n <= 62; element i occupies mask bit i - 1."""

    __slots__ = ("n",)

    def __init__(self, n: int) -> None:
        if not 1 <= n <= ALGEBRA_MAX_N:
            raise ValueError(f"universe size must be in 1..{ALGEBRA_MAX_N}, got {n}")
        self.n = n

    @property
    def full(self) -> SetMask:
        return (1 << self.n) - 1

    @property
    def num_masks(self) -> int:
        return 1 << self.n

    def check_mask(self, m: SetMask) -> SetMask:
        if not 0 <= m <= self.full:
            raise ValueError(f"mask {m:#x} does not fit a universe of size {self.n}")
        return m

    def require_table(self) -> None:
        """Reject universes too large for 2^n table allocation."""
        if self.n > TABLE_MAX_N:
            raise ValueError(
                f"universe too large: n={self.n} exceeds the 2^n table limit {TABLE_MAX_N}"
            )

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Universe) and other.n == self.n

    def __hash__(self) -> int:
        return hash(("Universe", self.n))

    def __repr__(self) -> str:
        return f"Universe({self.n})"


def mask_of(elements: Iterable[int], u: Universe) -> SetMask:
    """Mask of a collection of 1-based elements."""
    m = 0
    for e in elements:
        if not 1 <= e <= u.n:
            raise ValueError(f"element {e} outside universe 1..{u.n}")
        m |= 1 << (e - 1)
    return m


def elements_of(m: SetMask) -> tuple[int, ...]:
    """Ascending 1-based elements of a mask."""
    return tuple(i + 1 for i in range(m.bit_length()) if m >> i & 1)


def submasks(m: SetMask) -> Iterator[SetMask]:
    """Every subset of m, including 0 and m itself."""
    s = m
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & m


class Family:
    """Immutable, deduplicated family of masks over a fixed universe.

    Members are kept strictly sorted; membership tests are O(1) through a
    frozenset index.
    """

    __slots__ = ("universe", "members", "_index")

    def __init__(self, universe: Universe, masks: Iterable[SetMask] = ()) -> None:
        members = tuple(sorted(set(masks)))
        if members:
            universe.check_mask(members[0])
            universe.check_mask(members[-1])
        self.universe = universe
        self.members = members
        self._index = frozenset(members)

    @property
    def index(self) -> frozenset[SetMask]:
        return self._index

    def __contains__(self, m: object) -> bool:
        return m in self._index

    def __iter__(self) -> Iterator[SetMask]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Family)
            and other.universe == self.universe
            and other.members == self.members
        )

    def __hash__(self) -> int:
        return hash((self.universe, self.members))

    def __repr__(self) -> str:
        return f"Family(n={self.universe.n}, size={len(self.members)})"


def complement_family(f: Family) -> Family:
    """The family of complements; involutive and size preserving."""
    full = f.universe.full
    return Family(f.universe, (full ^ m for m in f.members))


def is_downset(f: Family) -> bool:
    """True iff every subset of every member is a member.

    Removing any single element of a member must land in the family; by
    induction this is equivalent to full downward closure.
    """
    for m in f.members:
        rest = m
        while rest:
            bit = rest & -rest
            if (m ^ bit) not in f:
                return False
            rest ^= bit
    return True


def downset_closure(f: Family) -> Family:
    """Smallest down-set containing f (idempotent, extensive, monotone)."""
    seen = set(f.members)
    stack = list(f.members)
    while stack:
        m = stack.pop()
        rest = m
        while rest:
            bit = rest & -rest
            child = m ^ bit
            if child not in seen:
                seen.add(child)
                stack.append(child)
            rest ^= bit
    return Family(f.universe, seen)


def maximal_elements(f: Family) -> Family:
    """Members not strictly contained in another member (an antichain)."""
    tops: list[SetMask] = []
    for m in sorted(f.members, key=lambda x: (-x.bit_count(), x)):
        if not any(m | t == t for t in tops):
            tops.append(m)
    return Family(f.universe, tops)


def make_star(u: Universe) -> Family:
    """All 2^(n-1) subsets containing element 1."""
    return Family(u, ((m << 1) | 1 for m in range(1 << (u.n - 1))))


class CoverTable:
    """Minimum union-cover sizes for every mask of the lattice.

    min_cover[m] is the least j <= limit such that m equals a union of j
    family members (members may repeat), 255 where no such j exists; the
    empty mask gets 0, the empty union. Computed with a subset-sum (zeta)
    transform, pointwise j-th powers and Moebius inversion over two prime
    moduli, so a genuinely positive count never vanishes unless both
    residues collide at zero.
    """

    NONE = _NONE

    __slots__ = ("universe", "limit", "min_cover", "_sup")

    def __init__(self, universe: Universe, limit: int, min_cover: np.ndarray) -> None:
        self.universe = universe
        self.limit = limit
        self.min_cover = min_cover
        self._sup: np.ndarray | None = None

    def exact(self, m: SetMask) -> int | None:
        """Least j with m exactly a union of j members, None beyond limit."""
        v = int(self.min_cover[self.universe.check_mask(m)])
        return None if v == _NONE else v

    @property
    def sup(self) -> np.ndarray:
        """Superset-min closure: sup[m] = min(min_cover[m'] for m' >= m)."""
        if self._sup is None:
            s = self.min_cover.copy()
            for i in range(self.universe.n):
                v = s.reshape(-1, 2, 1 << i)
                v[:, 0, :] = np.minimum(v[:, 0, :], v[:, 1, :])
            self._sup = s
        return self._sup

    def covering(self, m: SetMask) -> int | None:
        """Least j such that some j members union to a superset of m."""
        v = int(self.sup[self.universe.check_mask(m)])
        return None if v == _NONE else v

    def can_cover(self, target: SetMask, j: int) -> bool:
        v = self.covering(target)
        return v is not None and v <= j


def build_cover_table(f: Family, j_max: int) -> CoverTable:
    """Cover table of a nonempty family; requires n <= 24 and j_max <= 8."""
    u = f.universe
    u.require_table()
    if not f.members:
        raise ValueError("cover table requires a nonempty family")
    ind = np.zeros(u.num_masks, dtype=np.int64)
    ind[np.fromiter(f.members, dtype=np.int64, count=len(f.members))] = 1
    return cover_table_from_indicator(ind, u, j_max)


def cover_table_from_indicator(ind: np.ndarray, u: Universe, j_max: int) -> CoverTable:
    """Cover table from a 0/1 indicator over all 2^n masks (may be empty)."""
    u.require_table()
    if ind.shape != (u.num_masks,):
        raise ValueError("indicator length must be 2^n")
    if not 1 <= j_max <= COVER_MAX_J:
        raise ValueError(f"j_max must be in 1..{COVER_MAX_J}, got {j_max}")
    n = u.n
    zeta = ind.astype(np.int64, copy=True)
    for i in range(n):
        v = zeta.reshape(-1, 2, 1 << i)
        v[:, 1, :] += v[:, 0, :]
    # Unions of a single member are the members themselves.
    minc = np.full(u.num_masks, _NONE, dtype=np.uint8)
    minc[np.asarray(ind, dtype=bool)] = 1
    if j_max >= 2 and bool((minc == _NONE).any()):
        per_prime = []
        for p in _PRIMES:
            mp = minc.copy()
            pw = zeta % p
            for j in range(2, j_max + 1):
                if not bool((mp == _NONE).any()):
                    break
                pw = (pw * zeta) % p
                mob = pw.copy()
                for i in range(n):
                    v = mob.reshape(-1, 2, 1 << i)
                    v[:, 1, :] = (v[:, 1, :] - v[:, 0, :]) % p
                mp[(mob != 0) & (mp == _NONE)] = j
            per_prime.append(mp)
        minc = np.minimum(per_prime[0], per_prime[1])
    minc[0] = 0  # empty union
    return CoverTable(u, j_max, minc)


class CoverSearcher:
    """Branch-and-bound cover search over an antichain of candidate masks.

    find(target, budget) returns at most `budget` candidates whose union
    contains target (a tuple, empty for an empty target), or None when no
    such selection exists. At each step only candidates containing the
    lowest uncovered bit can help; they are tried largest first. Outcomes
    are memoised per target, so a searcher amortises well over many
    queries against the same family.
    """

    __slots__ = ("n", "_by_bit", "_yes", "_no")

    def __init__(self, tops: Iterable[SetMask], n: int) -> None:
        ordered = sorted(tops, key=lambda t: (-t.bit_count(), t))
        self.n = n
        self._by_bit = tuple(
            tuple(t for t in ordered if t >> b & 1) for b in range(n)
        )
        self._yes: dict[SetMask, tuple[SetMask, ...]] = {}
        self._no: dict[SetMask, int] = {}

    def find(self, target: SetMask, budget: int) -> tuple[SetMask, ...] | None:
        if target == 0:
            return ()
        if budget <= 0:
            return None
        known = self._yes.get(target)
        if known is not None and len(known) <= budget:
            return known
        if self._no.get(target, 0) >= budget:
            return None
        low = (target & -target).bit_length() - 1
        for cand in self._by_bit[low]:
            rest = self.find(target & ~cand, budget - 1)
            if rest is not None:
                cover = (cand, *rest)
                if known is None or len(cover) < len(known):
                    self._yes[target] = cover
                return cover
        self._no[target] = budget
        return None


def can_cover(
    f: Family,
    target: SetMask,
    j: int,
    *,
    backend: str = "auto",
    table: CoverTable | None = None,
) -> bool:
    """True iff some <= j members of f union to a superset of target.

    For down-sets this coincides with hitting the target exactly (restrict
    each member to the target). The default backend searches over maximal
    elements; pass a prebuilt CoverTable (or backend="dp") for the
    transform route.
    """
    f.universe.check_mask(target)
    if j < 1:
        raise ValueError(f"cover budget must be >= 1, got {j}")
    if target == 0:
        return True
    if table is not None:
        v = table.covering(target)
        if v is not None and v <= j:
            return True
        if table.limit >= j:
            return False
        raise ValueError(f"cover table limit {table.limit} cannot decide budget {j}")
    if backend == "auto":
        backend = "tuples"
    if backend == "dp":
        if j > COVER_MAX_J:
            raise ValueError(f"dp backend caps the budget at {COVER_MAX_J}")
        return can_cover(f, target, j, table=build_cover_table(f, j))
    if backend != "tuples":
        raise ValueError(f"unknown backend {backend!r}")
    tops = maximal_elements(f).members
    return CoverSearcher(tops, f.universe.n).find(target, j) is not None
