"""Symbolic index sets for the closed Kazhdan-Lusztig coefficient formula.

The degree-k coefficient is a signed sum of differences of second-kind
Whitney numbers over a recursively built family of index sets.  Entries
are either plain integers or expressions ``r - c`` in the ambient rank r;
each term carries its sign exponent and its recursive decomposition, from
which the "top heavy" partner index is derived.

Construction of the family for one k:

* base terms: all integer sets ``S + {k}`` with S inside {1..k-1}, signed
  by parity of |S|;
* recursive terms, for each 3 <= s <= 2k-1 and max(1, s-k) <= i < s/2:
  ``alpha + {r-s} + F_s(beta)`` where alpha ranges over the base-style
  family on k-s+i, beta over the family for i, and F_s rewrites an integer
  c as r-(s-c) while fixing existing r-expressions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import CapExceeded, InvalidParams, InvalidShift, MalformedTerm, RankTooSmall

DEFAULT_CAP = 8


@dataclass(frozen=True)
class SymbolicEntry:
    """One index entry: the integer c, or r - c when ``shift`` is set."""

    shift: bool
    c: int

    def instantiate(self, r: int) -> int:
        return r - self.c if self.shift else self.c

    def sort_key(self):
        # integers ascending, then r - c by ascending value (descending c)
        return (1, -self.c) if self.shift else (0, self.c)

    def __str__(self):
        return f"r - {self.c}" if self.shift else str(self.c)


def const(c: int) -> SymbolicEntry:
    if c < 1:
        raise InvalidParams(f"constant entries must be >= 1, got {c}")
    return SymbolicEntry(False, c)


def rshift(c: int) -> SymbolicEntry:
    if c < 1:
        raise InvalidParams(f"shift entries must be >= 1, got {c}")
    return SymbolicEntry(True, c)


def _sorted_entries(entries) -> tuple[SymbolicEntry, ...]:
    out = tuple(sorted(entries, key=SymbolicEntry.sort_key))
    if len(set(out)) != len(out):
        raise MalformedTerm(f"duplicate entries in {out}")
    return out


@dataclass(frozen=True)
class IndexTerm:
    """One signed symbolic index set with its decomposition record."""

    entries: tuple[SymbolicEntry, ...]
    sign_exponent: int
    k: int
    s: int | None = None
    i: int | None = None
    alpha: tuple[SymbolicEntry, ...] | None = None
    beta: "IndexTerm | None" = None

    @property
    def is_base(self) -> bool:
        """True for the all-integer terms (no r entries)."""
        return self.s is None

    @property
    def sign(self) -> int:
        return -1 if self.sign_exponent % 2 else 1

    def render(self) -> str:
        inner = ", ".join(str(e) for e in self.entries)
        return f"{'-' if self.sign < 0 else '+'}[{inner}]"


def a_family(t: int) -> list[tuple[SymbolicEntry, ...]]:
    """All integer entry-sets over [t] that contain t.

    For t = 0 the single empty set (so an empty alpha is available to the
    recursion); empty for negative t.  Sets are listed with the subset of
    {1..t-1} in binary-counter order.
    """
    if t < 0:
        return []
    if t == 0:
        return [()]
    out = []
    for mask in range(1 << (t - 1)):
        subset = [j + 1 for j in range(t - 1) if mask >> j & 1]
        out.append(tuple(const(c) for c in subset + [t]))
    return out


def shift_entry(s: int, entry: SymbolicEntry) -> SymbolicEntry:
    """The rewrite carrying an index on a rank-s upper interval into rank r.

    Integers c become r - (s - c); entries already of the form r - c are
    fixed.  Needs s >= 3 and c < s on integer entries.
    """
    if s < 3:
        raise InvalidShift(f"shift needs s >= 3, got {s}")
    if entry.shift:
        return entry
    if entry.c >= s:
        raise InvalidShift(f"cannot shift constant {entry.c} by s = {s}")
    return rshift(s - entry.c)


_family_cache: dict[int, list[IndexTerm]] = {}


def index_family(k: int, cap: int = DEFAULT_CAP) -> list[IndexTerm]:
    """The signed index family for the degree-k coefficient.

    Deterministic order: base terms first, then recursive terms by
    ascending s, ascending i, alpha order, beta order.
    """
    if k < 1:
        raise InvalidParams("index family needs k >= 1")
    if k > cap:
        raise CapExceeded(f"k = {k} exceeds cap {cap}")
    if k not in _family_cache:
        _family_cache[k] = _build_family(k, cap)
    return _family_cache[k]


def _build_family(k, cap):
    if k == 1:
        return [IndexTerm(entries=(const(1),), sign_exponent=0, k=1)]
    terms = [
        IndexTerm(entries=alpha, sign_exponent=len(alpha) - 1, k=k)
        for alpha in a_family(k)
    ]
    for s in range(3, 2 * k):
        lo = max(1, s - k)
        for i in range(lo, (s + 1) // 2):
            for alpha in a_family(k - s + i):
                for beta in index_family(i, cap=cap):
                    entries = _sorted_entries(
                        alpha + (rshift(s),) + tuple(shift_entry(s, e) for e in beta.entries)
                    )
                    terms.append(
                        IndexTerm(
                            entries=entries,
                            sign_exponent=len(alpha) + beta.sign_exponent,
                            k=k,
                            s=s,
                            i=i,
                            alpha=alpha,
                            beta=beta,
                        )
                    )
    if len({t.entries for t in terms}) != len(terms):
        raise MalformedTerm(f"family for k={k} has colliding entry sets")
    return terms


def gap(term: IndexTerm) -> int:
    """The rank offset d used to build the top-heavy partner."""
    if term.is_base:
        cs = [e.c for e in term.entries]
        top = max(cs)
        rest = [c for c in cs if c != top]
        return top if not rest else top - max(rest)
    cs = sorted(e.c for e in term.entries if e.shift)
    if len(cs) < 2:
        raise MalformedTerm(f"term {term.entries} has fewer than two r-entries")
    return cs[1] - cs[0]


def top_heavy(term: IndexTerm) -> tuple[SymbolicEntry, ...]:
    """The partner index paired against ``term`` in the coefficient formula.

    Base terms swap their top integer k for r - d; recursive terms rewrite
    their beta partner in place.  The recursive route is authoritative and
    a closed-form path (drop the entry nearest r, insert r - d) is
    computed alongside as a consistency check.
    """
    if term.is_base:
        d = gap(term)
        top = max(e.c for e in term.entries)
        kept = [e for e in term.entries if e.c != top]
        return _sorted_entries(kept + [rshift(d)])
    recursive = _sorted_entries(
        term.alpha
        + (rshift(term.s),)
        + tuple(shift_entry(term.s, e) for e in top_heavy(term.beta))
    )
    closed = _top_heavy_closed(term)
    if recursive != closed:
        raise MalformedTerm(
            f"top-heavy mismatch for {term.entries}: {recursive} vs {closed}"
        )
    return recursive


def _top_heavy_closed(term: IndexTerm) -> tuple[SymbolicEntry, ...]:
    d = gap(term)
    c_min = min(e.c for e in term.entries if e.shift)
    kept = [e for e in term.entries if not (e.shift and e.c == c_min)]
    return _sorted_entries(kept + [rshift(d)])


def instantiate(entries, r: int) -> tuple[int, ...]:
    """Evaluate symbolic entries at a concrete rank r.

    Result is strictly increasing inside [1, r-1]; collisions or values
    out of range raise RankTooSmall (cannot happen once r >= 2k+1).
    """
    values = sorted(e.instantiate(r) for e in entries)
    if any(a >= b for a, b in zip(values, values[1:])):
        raise RankTooSmall(f"entries {entries} collide at r = {r}")
    if values and (values[0] < 1 or values[-1] > r - 1):
        raise RankTooSmall(f"entries {entries} leave [1, r-1] at r = {r}")
    return tuple(values)


def render_table(k: int, cap: int = DEFAULT_CAP) -> str:
    """Signed bracket list for one k, e.g. ``+[2], +[r - 3, r - 2], -[1, 2]``."""
    return ", ".join(term.render() for term in index_family(k, cap=cap))


def term_to_dict(term: IndexTerm) -> dict:
    doc = {
        "entries": [str(e) for e in term.entries],
        "sign": term.sign,
        "top_heavy": [str(e) for e in top_heavy(term)],
    }
    if term.is_base:
        doc["decomposition"] = {"type": "base", "k": term.k}
    else:
        doc["decomposition"] = {
            "type": "recursive",
            "k": term.k,
            "s": term.s,
            "i": term.i,
            "alpha": [str(e) for e in term.alpha],
            "beta": [str(e) for e in term.beta.entries],
        }
    return doc


def decompositions(entries, k: int) -> list[tuple]:
    """Exhaustive search for (alpha, s, beta) decompositions of an entry set.

    Used by the uniqueness property test; returns every triple whose
    assembled entry set matches, scanning all s and all beta in every
    smaller family.
    """
    entry_set = frozenset(entries)
    found = []
    shifts = [e.c for e in entries if e.shift]
    if not shifts:
        return found
    for s in range(3, 2 * k):
        if rshift(s) not in entry_set:
            continue
        lo = max(1, s - k)
        for i in range(lo, (s + 1) // 2):
            for alpha in a_family(k - s + i):
                for beta in index_family(i):
                    try:
                        candidate = frozenset(
                            alpha
                            + (rshift(s),)
                            + tuple(shift_entry(s, e) for e in beta.entries)
                        )
                    except (InvalidShift, MalformedTerm):
                        continue
                    if candidate == entry_set and len(candidate) == len(entries):
                        found.append((alpha, s, beta))
    return found
