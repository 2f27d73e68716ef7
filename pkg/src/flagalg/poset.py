"""Finite graded posets: construction, generators, and structural operations.

Elements are dense integer indices; labels are cosmetic.  The order
relation is stored closed as one bitmask row per element, so ``leq`` is a
single shift-and-test.  Rank is always recomputed from the cover relation
(longest chain from the minimal elements) and gradedness is enforced at
construction time.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from itertools import combinations

from .errors import (
    CycleDetected,
    DuplicateCover,
    ElementOutOfRange,
    InvalidParams,
    NotGraded,
    SizeLimitExceeded,
)

#: Default cap on stored relation bits (n^2); override with max_bits=.
DEFAULT_MAX_BITS = 1 << 20


def _max_bits_default() -> int:
    env = os.environ.get("FLAGALG_MAX_BITS")
    return int(env) if env else DEFAULT_MAX_BITS


@dataclass(frozen=True)
class Diagnostics:
    """Structural report; produced by :meth:`Poset.validate`."""

    graded: bool
    bounded_below: bool
    bounded_above: bool
    lattice: bool


class Poset:
    """Immutable finite graded poset.

    Do not call the constructor directly; use :func:`from_covers` or one of
    the generators.  All derived data (up/down bitmask rows, rank levels)
    is computed once and shared.
    """

    __slots__ = (
        "n",
        "labels",
        "covers",
        "rank",
        "top_rank",
        "name",
        "_up",
        "_down",
        "_uplists",
        "_cache",
    )

    def __init__(self, labels, covers, rank, up, down, name=None):
        self.n = len(labels)
        self.labels = tuple(labels)
        self.covers = tuple(covers)
        self.rank = tuple(rank)
        self.top_rank = max(rank) if rank else 0
        self.name = name
        self._up = up      # _up[x]: bitmask of {y : x <= y}
        self._down = down  # _down[y]: bitmask of {x : x <= y}
        self._uplists = None
        self._cache = {}   # scratch for flag tables, mobius tables, etc.

    # -- order queries --------------------------------------------------

    def leq(self, x: int, y: int) -> bool:
        return (self._up[x] >> y) & 1 == 1

    def up_mask(self, x: int) -> int:
        return self._up[x]

    def down_mask(self, x: int) -> int:
        return self._down[x]

    def up_list(self, x: int) -> tuple[int, ...]:
        """Sorted indices of all y >= x (including x)."""
        if self._uplists is None:
            self._uplists = [_bits(m) for m in self._up]
        return self._uplists[x]

    def interval(self, x: int, y: int) -> tuple[int, ...]:
        """Sorted indices of the closed interval [x, y]; empty unless x <= y."""
        return _bits(self._up[x] & self._down[y])

    def elements_of_rank(self, j: int) -> list[int]:
        return [x for x in range(self.n) if self.rank[x] == j]

    def minimal_elements(self) -> list[int]:
        return [x for x in range(self.n) if self._down[x] == (1 << x)]

    def bottom(self) -> int:
        """The unique minimal element; raises if it does not exist."""
        mins = [x for x in range(self.n) if self._down[x] == (1 << x)]
        if len(mins) != 1:
            raise ElementOutOfRange(f"poset has {len(mins)} minimal elements, not 1")
        return mins[0]

    def is_bounded_below(self) -> bool:
        return sum(1 for x in range(self.n) if self._down[x] == (1 << x)) == 1

    def top(self) -> int:
        maxs = [x for x in range(self.n) if self._up[x] == (1 << x)]
        if len(maxs) != 1:
            raise ElementOutOfRange(f"poset has {len(maxs)} maximal elements, not 1")
        return maxs[0]

    # -- validation -----------------------------------------------------

    def validate(self) -> Diagnostics:
        """Recheck gradedness and report boundedness and the lattice property.

        Reports, never raises.
        """
        graded = all(self.rank[b] == self.rank[a] + 1 for a, b in self.covers)
        mins = [x for x in range(self.n) if self._down[x] == (1 << x)]
        maxs = [x for x in range(self.n) if self._up[x] == (1 << x)]
        return Diagnostics(
            graded=graded,
            bounded_below=len(mins) == 1,
            bounded_above=len(maxs) == 1,
            lattice=self._is_lattice(),
        )

    def _is_lattice(self):
        key = "is_lattice"
        if key not in self._cache:
            self._cache[key] = self._lattice_check()
        return self._cache[key]

    def _lattice_check(self):
        if self.n == 0:
            return False
        for x in range((self.n)):
            for y in range(x + 1, self.n):
                if not _has_unique_bound(self, self._down[x] & self._down[y], upper=False):
                    return False
                if not _has_unique_bound(self, self._up[x] & self._up[y], upper=True):
                    return False
        return True

    # -- structural operations -------------------------------------------

    def localization(self, x: int) -> "Poset":
        """Induced subposet on {y : y <= x}; ranks inherited."""
        if not 0 <= x < self.n:
            raise ElementOutOfRange(f"element {x} out of range")
        return self._induced(_bits(self._down[x]), rebase=0)

    def restriction(self, x: int) -> "Poset":
        """Induced subposet on {y : y >= x}; ranks rebased so rank(x) = 0."""
        if not 0 <= x < self.n:
            raise ElementOutOfRange(f"element {x} out of range")
        return self._induced(_bits(self._up[x]), rebase=self.rank[x])

    def _induced(self, members, rebase):
        # Valid only for down- or up-closed member sets: the cover relation
        # restricts cleanly and ranks stay saturated.
        pos = {e: i for i, e in enumerate(members)}
        member_mask = 0
        for e in members:
            member_mask |= 1 << e
        up = []
        for e in members:
            row = self._up[e] & member_mask
            dense = 0
            while row:
                low = row & -row
                dense |= 1 << pos[low.bit_length() - 1]
                row ^= low
            up.append(dense)
        m = len(members)
        down = [0] * m
        for i in range(m):
            row = up[i]
            while row:
                low = row & -row
                down[low.bit_length() - 1] |= 1 << i
                row ^= low
        covers = [
            (pos[a], pos[b]) for a, b in self.covers if a in pos and b in pos
        ]
        labels = [self.labels[e] for e in members]
        rank = [self.rank[e] - rebase for e in members]
        return Poset(labels, covers, rank, up, down)

    # -- serialization ----------------------------------------------------

    def to_canonical_dict(self) -> dict:
        """Canonical file form: elements sorted by (rank, label), covers lexicographic."""
        order = sorted(range(self.n), key=lambda x: (self.rank[x], self.labels[x]))
        pos = {e: i for i, e in enumerate(order)}
        covers = sorted((pos[a], pos[b]) for a, b in self.covers)
        doc = {"schema": 1}
        if self.name:
            doc["name"] = self.name
        doc["elements"] = [self.labels[e] for e in order]
        doc["covers"] = [list(c) for c in covers]
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_canonical_dict(), indent=2) + "\n"

    def __repr__(self):
        name = self.name or "poset"
        return f"<Poset {name}: {self.n} elements, rank {self.top_rank}>"


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def _has_unique_bound(p, common, upper):
    # common: bitmask of common lower (or upper) bounds of a pair.
    if common == 0:
        return False
    best = -1
    best_rank = None
    mask = common
    while mask:
        low = mask & -mask
        e = low.bit_length() - 1
        r = p.rank[e]
        if upper:
            r = -r
        if best_rank is None or r > best_rank:
            best_rank, best = r, e
        mask ^= low
    # best is the bound iff it is comparable to every other common bound
    row = p._down[best] if not upper else p._up[best]
    return common & ~row == 0


# -- construction -------------------------------------------------------------


def from_covers(labels, cover_pairs, name=None, max_bits=None) -> Poset:
    """Build a graded poset from labels and cover pairs (x covered-by y).

    The order is the reflexive-transitive closure of the covers; rank is
    the longest chain from the minimal elements.  Raises CycleDetected,
    NotGraded, DuplicateCover, or SizeLimitExceeded.
    """
    n = len(labels)
    cap = max_bits if max_bits is not None else _max_bits_default()
    if n * n > cap:
        raise SizeLimitExceeded(
            f"{n}^2 relation bits exceed cap {cap}; pass max_bits to override"
        )
    seen = set()
    for a, b in cover_pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise ElementOutOfRange(f"cover ({a},{b}) out of range for {n} elements")
        if (a, b) in seen:
            raise DuplicateCover(f"cover ({a},{b}) listed twice")
        seen.add((a, b))

    succ = [[] for _ in range(n)]
    indeg = [0] * n
    for a, b in cover_pairs:
        succ[a].append(b)
        indeg[b] += 1

    # Kahn topological order; leftover nodes mean a cycle.
    order = [x for x in range(n) if indeg[x] == 0]
    deg = list(indeg)
    for x in order:
        for y in succ[x]:
            deg[y] -= 1
            if deg[y] == 0:
                order.append(y)
    if len(order) != n:
        raise CycleDetected("cover graph contains a cycle")

    rank = [0] * n
    for x in order:
        for y in succ[x]:
            rank[y] = max(rank[y], rank[x] + 1)
    for a, b in cover_pairs:
        if rank[b] != rank[a] + 1:
            raise NotGraded(
                f"cover ({labels[a]},{labels[b]}) spans ranks {rank[a]}->{rank[b]}"
            )

    up = [1 << x for x in range(n)]
    for x in reversed(order):
        row = up[x]
        for y in succ[x]:
            row |= up[y]
        up[x] = row
    down = [0] * n
    for x in range(n):
        row = up[x]
        while row:
            low = row & -row
            down[low.bit_length() - 1] |= 1 << x
            row ^= low
    return Poset(labels, sorted(set(map(tuple, cover_pairs))), rank, up, down, name=name)


def from_dict(doc: dict, max_bits=None) -> Poset:
    """Ingest the poset file format ({elements, covers, name?})."""
    labels = doc["elements"]
    covers = [tuple(c) for c in doc["covers"]]
    return from_covers(labels, covers, name=doc.get("name"), max_bits=max_bits)


def from_json(text: str, max_bits=None) -> Poset:
    return from_dict(json.loads(text), max_bits=max_bits)


def point(label: str = "*") -> Poset:
    return from_covers([label], [], name="point")


def chain(m: int, max_bits=None) -> Poset:
    """Total order 0 < 1 < ... < m."""
    if m < 0:
        raise InvalidParams("chain length must be >= 0")
    labels = [str(i) for i in range(m + 1)]
    covers = [(i, i + 1) for i in range(m)]
    return from_covers(labels, covers, name=f"chain:{m}", max_bits=max_bits)


def _subset_label(mask: int) -> str:
    if mask == 0:
        return "{}"
    return "{" + ",".join(str(i + 1) for i in range(mask.bit_length()) if mask >> i & 1) + "}"


def boolean_lattice(n: int, max_n: int = 20, max_bits=None) -> Poset:
    """Subsets of an n-set ordered by inclusion; rank = cardinality."""
    if n < 0:
        raise InvalidParams("boolean_lattice needs n >= 0")
    if n > max_n:
        raise SizeLimitExceeded(f"boolean_lattice cap is n <= {max_n}")
    subsets = sorted(range(1 << n), key=lambda s: (s.bit_count(), s))
    pos = {s: i for i, s in enumerate(subsets)}
    covers = []
    for s in subsets:
        for i in range(n):
            if not s >> i & 1:
                covers.append((pos[s], pos[s | (1 << i)]))
    labels = [_subset_label(s) for s in subsets]
    return from_covers(labels, covers, name=f"boolean:{n}", max_bits=max_bits)


def uniform_flats(m: int, n: int, max_bits=None) -> Poset:
    """Lattice of flats of the rank-m uniform matroid on n elements.

    Elements are the subsets of [n] of size < m together with [n] itself;
    rank is cardinality except the top has rank m.
    """
    if m < 1 or m > n:
        raise InvalidParams(f"uniform_flats needs 1 <= m <= n, got ({m},{n})")
    subsets = sorted(
        (s for s in range(1 << n) if s.bit_count() < m), key=lambda s: (s.bit_count(), s)
    )
    full = (1 << n) - 1
    subsets.append(full)
    pos = {s: i for i, s in enumerate(subsets)}
    covers = []
    for s in subsets[:-1]:
        size = s.bit_count()
        if size == m - 1:
            covers.append((pos[s], pos[full]))
        else:
            for i in range(n):
                if not s >> i & 1:
                    covers.append((pos[s], pos[s | (1 << i)]))
    labels = [_subset_label(s) for s in subsets]
    return from_covers(labels, covers, name=f"uniform:{m},{n}", max_bits=max_bits)


def _set_partitions(n):
    # Restricted growth strings; blocks come out in order of their minima.
    parts = []

    def rec(i, blocks):
        if i > n:
            parts.append(tuple(tuple(b) for b in blocks))
            return
        for b in blocks:
            b.append(i)
            rec(i + 1, blocks)
            b.pop()
        blocks.append([i])
        rec(i + 1, blocks)
        blocks.pop()

    rec(1, [])
    return parts


def partition_lattice(n: int, max_bits=None) -> Poset:
    """Set partitions of [n] under refinement (finer below coarser)."""
    if not 1 <= n <= 9:
        raise SizeLimitExceeded("partition_lattice supports 1 <= n <= 9")
    parts = _set_partitions(n)
    parts.sort(key=lambda p: (n - len(p), p))
    pos = {p: i for i, p in enumerate(parts)}
    covers = []
    for p in parts:
        blocks = [set(b) for b in p]
        for i, j in combinations(range(len(blocks)), 2):
            merged = [b for k, b in enumerate(blocks) if k not in (i, j)]
            merged.append(blocks[i] | blocks[j])
            merged = tuple(sorted(tuple(sorted(b)) for b in merged))
            covers.append((pos[p], pos[merged]))
    labels = ["|".join("".join(map(str, b)) for b in p) for p in parts]
    return from_covers(labels, covers, name=f"partition:{n}", max_bits=max_bits)


def figure1() -> Poset:
    """Rank-2 lattice with three atoms under one top element.

    Intersection lattice of three concurrent lines in the plane; the
    smallest poset where the left and right generalized Moebius functions
    disagree.
    """
    labels = ["0", "a", "b", "c", "1"]
    covers = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]
    return from_covers(labels, covers, name="figure1")


def product(p: Poset, q: Poset, max_bits=None) -> Poset:
    """Componentwise-order product; rank is additive."""
    cap = max_bits if max_bits is not None else _max_bits_default()
    n = p.n * q.n
    if n * n > cap:
        raise SizeLimitExceeded(f"product with {n} elements exceeds relation cap")
    labels = [f"({la},{lb})" for la in p.labels for lb in q.labels]
    covers = []
    for a, b in p.covers:
        for j in range(q.n):
            covers.append((a * q.n + j, b * q.n + j))
    for i in range(p.n):
        for a, b in q.covers:
            covers.append((i * q.n + a, i * q.n + b))
    name = None
    if p.name and q.name:
        name = f"product:({p.name},{q.name})"
    return from_covers(labels, covers, name=name, max_bits=max_bits)
