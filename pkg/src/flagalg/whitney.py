"""Multi-indexed Whitney numbers of both kinds and their summation identities.

A multi-index is a weakly increasing tuple of ranks.  Second-kind numbers
count rank-prescribed flags and are evaluated by propagating a counting
vector through consecutive rank levels (quadratic in level sizes instead
of exponential enumeration); first-kind numbers sum the generalized
Moebius function over the same flags.
"""

from __future__ import annotations

from itertools import combinations

from .errors import IndexOutOfRange, InvalidParams, NotBoundedBelow
from .incidence import flag_table, mobius_left
from .poset import Poset


def _check_index(p: Poset, index) -> tuple[int, ...]:
    idx = tuple(index)
    for i in idx:
        if not 0 <= i <= p.top_rank:
            raise IndexOutOfRange(f"rank {i} outside 0..{p.top_rank}")
    if any(a > b for a, b in zip(idx, idx[1:])):
        raise IndexOutOfRange(f"multi-index {idx} is not weakly increasing")
    return idx


def whitney_second(p: Poset, index) -> int:
    """Number of flags X_1 <= ... <= X_k with rank(X_j) prescribed.

    The empty index gives 1.  Repeated ranks force repeated entries, which
    the level-to-level comparability step handles with no special casing.
    """
    idx = _check_index(p, index)
    if not idx:
        return 1
    level = p.elements_of_rank(idx[0])
    counts = {x: 1 for x in level}
    for target in idx[1:]:
        nxt = {}
        for y in p.elements_of_rank(target):
            dm = p.down_mask(y)
            nxt[y] = sum(c for x, c in counts.items() if dm >> x & 1)
        counts = nxt
    return sum(counts.values())


def whitney_second_naive(p: Poset, index) -> int:
    """Direct backtracking count of rank-prescribed flags (cross-check path)."""
    idx = _check_index(p, index)
    if not idx:
        return 1
    levels = [p.elements_of_rank(i) for i in idx]

    def count(position, below):
        if position == len(levels):
            return 1
        total = 0
        for x in levels[position]:
            if below is None or p.leq(below, x):
                total += count(position + 1, x)
        return total

    return count(0, None)


def whitney_first(p: Poset, index) -> int:
    """Sum of the arity-k Moebius function over rank-prescribed flags."""
    idx = _check_index(p, index)
    k = len(idx)
    if k < 2:
        raise InvalidParams(
            "first-kind numbers need at least 2 indices; the classical w_i is (0, i)"
        )
    mob = mobius_left(p, k)
    table = flag_table(p, k)
    rank = p.rank
    total = 0
    for pos, f in enumerate(table.flags):
        if all(rank[e] == i for e, i in zip(f, idx)):
            total += mob.values[pos]
    return total


def whitney_first_via_interpolation(p: Poset, n: int) -> int:
    """Evaluate w_(0,n) as an alternating sum of second-kind numbers.

    Expands over all subsets of {1..n-1}: the subset S contributes
    (-1)^(|S|+1) W_(S + {n}).  Equals whitney_first(p, (0, n)).
    """
    if not 1 <= n <= p.top_rank:
        raise IndexOutOfRange(f"need 1 <= n <= {p.top_rank}")
    total = 0
    inner = list(range(1, n))
    for size in range(len(inner) + 1):
        for subset in combinations(inner, size):
            total += (-1) ** (size + 1) * whitney_second(p, subset + (n,))
    return total


def region_counts(p: Poset) -> tuple[int, int]:
    """Signed flag-count sums (a, b) for an intersection poset.

    For the intersection poset of a real essential arrangement of rank r,
    ``a`` counts the regions of the complement and ``b`` the relatively
    bounded regions; in general a == (-1)^r chi(-1) and b == (-1)^r chi(1)
    for the rank-corank characteristic polynomial chi.
    """
    if not p.is_bounded_below():
        raise NotBoundedBelow("region counts need a unique minimal element")
    r = p.top_rank
    a = 0
    b = 0
    ranks = list(range(1, r + 1))
    for size in range(r + 1):
        for subset in combinations(ranks, size):
            w = whitney_second(p, subset)
            top = subset[-1] if subset else 0
            a += (-1) ** (size + top) * w
            b += (-1) ** size * w
    return a, (-1) ** r * b
