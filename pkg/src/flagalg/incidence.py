"""Partial flag incidence algebras: flag enumeration, convolution, and the
distinguished elements (piecewise deltas, zeta, left and right Moebius).

Arity-n functions assign a ring value to every weakly increasing n-tuple
of poset elements; values off the flag set are implicitly zero and never
stored.  Convolution interleaves an (n-1)-tuple between consecutive
entries:

    (f * g)(X_1..X_n) = sum over X_i <= Y_i <= X_{i+1}
                        f(X_1, Y_1..Y_{n-1}) * g(Y_1..Y_{n-1}, X_n)

Integer-valued computations run on a compiled 64-bit kernel when it is
available and retry transparently on the arbitrary-precision pure path if
the kernel overflows.
"""

from __future__ import annotations

import os

from . import _backend, _kernels_py
from .errors import (
    ArityMismatch,
    EnumerationLimitExceeded,
    FlagNotInPoset,
    IndexOutOfRange,
    PosetMismatch,
)
from .poset import Poset

DEFAULT_MAX_FLAGS = 1_000_000

_INT64_MIN = -(1 << 63)
_INT64_MAX = (1 << 63) - 1


def _max_flags_default() -> int:
    env = os.environ.get("FLAGALG_MAX_FLAGS")
    return int(env) if env else DEFAULT_MAX_FLAGS


def count_flags(p: Poset, n: int) -> int:
    """Number of weakly increasing n-tuples, without enumerating them."""
    if n < 1:
        raise ArityMismatch("flag length must be >= 1")
    counts = [1] * p.n
    for _ in range(n - 1):
        counts = [sum(counts[y] for y in p.up_list(x)) for x in range(p.n)]
    return sum(counts)


class FlagTable:
    """Cached enumeration of Fl^n(P) with the lookup structures the

    convolution and elimination loops need.  One instance per (poset,
    arity), created through :func:`flag_table`.
    """

    def __init__(self, poset: Poset, n: int, max_flags=None):
        cap = max_flags if max_flags is not None else _max_flags_default()
        total = count_flags(poset, n)
        if total > cap:
            raise EnumerationLimitExceeded(
                f"Fl^{n} has {total} flags, cap is {cap}; "
                "set FLAGALG_MAX_FLAGS to override"
            )
        self.poset = poset
        self.n = n
        self.flags = self._enumerate()
        self.index = {f: i for i, f in enumerate(self.flags)}
        rank = poset.rank
        self._rank_sums = [sum(rank[e] for e in f) for f in self.flags]
        self._order_asc = None
        self._order_desc = None
        self._intervals = {}
        self._arrays = None

    def _enumerate(self):
        p, n = self.poset, self.n
        out = []

        def rec(prefix):
            if len(prefix) == n:
                out.append(prefix)
                return
            choices = range(p.n) if not prefix else p.up_list(prefix[-1])
            for y in choices:
                rec(prefix + (y,))

        rec(())
        return out

    @property
    def order_ascending(self):
        if self._order_asc is None:
            self._order_asc = sorted(
                range(len(self.flags)),
                key=lambda i: (self._rank_sums[i], self.flags[i]),
            )
        return self._order_asc

    @property
    def order_descending(self):
        if self._order_desc is None:
            self._order_desc = sorted(
                range(len(self.flags)),
                key=lambda i: (-self._rank_sums[i], self.flags[i]),
            )
        return self._order_desc

    def intervals_for(self, flag):
        """Interval lists [X_i, X_{i+1}] feeding the interleaving loops."""
        cache = self._intervals
        out = []
        for a, b in zip(flag, flag[1:]):
            iv = cache.get((a, b))
            if iv is None:
                iv = cache[(a, b)] = self.poset.interval(a, b)
            out.append(iv)
        return out

    # -- compiled-kernel interchange ------------------------------------

    def kernel_usable(self) -> bool:
        return _backend.HAVE_EXT and self.poset.n**self.n < _INT64_MAX

    def arrays(self):
        """numpy views consumed by the compiled kernels (built lazily)."""
        if self._arrays is None:
            import numpy as np

            p = self.poset
            flags = np.array(self.flags, dtype=np.int32).reshape(len(self.flags), self.n)
            base = p.n
            keys = np.zeros(len(self.flags), dtype=np.int64)
            for j in range(self.n):
                keys *= base
                keys += flags[:, j]
            indptr = np.zeros(p.n + 1, dtype=np.int32)
            ups = [p.up_list(x) for x in range(p.n)]
            for x in range(p.n):
                indptr[x + 1] = indptr[x] + len(ups[x])
            indices = np.zeros(int(indptr[-1]), dtype=np.int32)
            for x in range(p.n):
                indices[indptr[x] : indptr[x + 1]] = ups[x]
            leq = np.zeros((p.n, p.n), dtype=np.uint8)
            for x in range(p.n):
                leq[x, list(ups[x])] = 1
            asc = np.array(self.order_ascending, dtype=np.int32)
            desc = np.array(self.order_descending, dtype=np.int32)
            self._arrays = (flags, keys, indptr, indices, leq, asc, desc)
        return self._arrays


def flag_table(p: Poset, n: int, max_flags=None) -> FlagTable:
    key = ("flags", n)
    table = p._cache.get(key)
    if table is None:
        table = p._cache[key] = FlagTable(p, n, max_flags=max_flags)
    return table


def flags(p: Poset, n: int, max_flags=None) -> list[tuple[int, ...]]:
    """All weakly increasing n-tuples of elements, in lexicographic order."""
    return flag_table(p, n, max_flags=max_flags).flags


class IncidenceFunction:
    """A member of the arity-n flag incidence algebra of one poset.

    Values are stored densely over the cached flag enumeration; evaluation
    at a non-flag tuple gives 0.  ``f * g`` is convolution.
    """

    __slots__ = ("poset", "arity", "values", "_table")

    def __init__(self, poset: Poset, arity: int, values, table=None):
        if arity < 2:
            raise ArityMismatch("incidence algebra arity must be >= 2")
        self.poset = poset
        self.arity = arity
        self._table = table if table is not None else flag_table(poset, arity)
        if len(values) != len(self._table.flags):
            raise FlagNotInPoset(
                f"expected {len(self._table.flags)} values, got {len(values)}"
            )
        self.values = list(values)

    @classmethod
    def from_callable(cls, poset, arity, fn):
        table = flag_table(poset, arity)
        return cls(poset, arity, [fn(f) for f in table.flags], table=table)

    def __call__(self, flag):
        i = self._table.index.get(tuple(flag))
        return self.values[i] if i is not None else 0

    def __eq__(self, other):
        return (
            isinstance(other, IncidenceFunction)
            and self.poset is other.poset
            and self.arity == other.arity
            and self.values == other.values
        )

    __hash__ = None  # mutable values list; not hashable

    def __add__(self, other):
        self._check_compatible(other)
        return IncidenceFunction(
            self.poset,
            self.arity,
            [a + b for a, b in zip(self.values, other.values)],
            table=self._table,
        )

    def __sub__(self, other):
        self._check_compatible(other)
        return IncidenceFunction(
            self.poset,
            self.arity,
            [a - b for a, b in zip(self.values, other.values)],
            table=self._table,
        )

    def __mul__(self, other):
        return convolve(self, other)

    def _check_compatible(self, other):
        if self.poset is not other.poset:
            raise PosetMismatch("functions live on different posets")
        if self.arity != other.arity:
            raise ArityMismatch(f"arity {self.arity} vs {other.arity}")

    def dump(self) -> str:
        """One line per flag: ``(labels...) -> value``, lexicographic order."""
        labels = self.poset.labels
        lines = []
        for f, v in zip(self._table.flags, self.values):
            tup = ", ".join(labels[e] for e in f)
            lines.append(f"({tup}) -> {v}")
        return "\n".join(lines)

    def __repr__(self):
        return f"<IncidenceFunction arity {self.arity} on {self.poset!r}>"


def convolve(f: IncidenceFunction, g: IncidenceFunction) -> IncidenceFunction:
    """Convolution product; exact arithmetic on any value ring."""
    f._check_compatible(g)
    table = f._table
    values = _dispatch_convolve(table, f.values, g.values)
    return IncidenceFunction(f.poset, f.arity, values, table=table)


def _ints_in_range(values):
    return all(
        isinstance(v, int) and _INT64_MIN <= v <= _INT64_MAX for v in values
    )


def _dispatch_convolve(table, fv, gv):
    if table.kernel_usable() and _ints_in_range(fv) and _ints_in_range(gv):
        import numpy as np

        flags_a, keys, indptr, indices, leq, _, _ = table.arrays()
        try:
            out = _backend.extension_module().convolve_i64(
                flags_a,
                keys,
                indptr,
                indices,
                leq,
                np.array(fv, dtype=np.int64),
                np.array(gv, dtype=np.int64),
            )
            return [int(v) for v in out]
        except OverflowError:
            pass  # retry below with arbitrary precision
    return _kernels_py.convolve(table, fv, gv)


def _dispatch_mobius(table, right: bool):
    if table.kernel_usable():
        flags_a, keys, indptr, indices, leq, asc, desc = table.arrays()
        try:
            out = _backend.extension_module().mobius_i64(
                flags_a, keys, indptr, indices, leq, desc if right else asc, int(right)
            )
            return [int(v) for v in out]
        except OverflowError:
            pass
    return (_kernels_py.mobius_right if right else _kernels_py.mobius_left)(table)


# -- distinguished elements ---------------------------------------------------


def zeta_fn(p: Poset, n: int) -> IncidenceFunction:
    """The constant function 1 on all arity-n flags."""
    table = flag_table(p, n)
    return IncidenceFunction(p, n, [1] * len(table.flags), table=table)


def delta_set(p: Poset, n: int, positions) -> IncidenceFunction:
    """Piecewise delta: 1 exactly when the entries at the given 1-based

    positions coincide.  ``delta_set(p, n, range(1, n + 1))`` is the
    classical diagonal delta.
    """
    pos = sorted(set(positions))
    if not pos:
        raise IndexOutOfRange("position set must be nonempty")
    if pos[0] < 1 or pos[-1] > n:
        raise IndexOutOfRange(f"positions {pos} not within 1..{n}")
    table = flag_table(p, n)
    zero_based = [i - 1 for i in pos]

    def value(flag):
        first = flag[zero_based[0]]
        return 1 if all(flag[i] == first for i in zero_based) else 0

    return IncidenceFunction(p, n, [value(f) for f in table.flags], table=table)


def indicator(p: Poset, n: int, flag_set) -> IncidenceFunction:
    """Characteristic function of a set of flags."""
    table = flag_table(p, n)
    wanted = set(map(tuple, flag_set))
    unknown = wanted - set(table.index)
    if unknown:
        raise FlagNotInPoset(f"not flags of this poset: {sorted(unknown)[:3]}")
    return IncidenceFunction(
        p, n, [1 if f in wanted else 0 for f in table.flags], table=table
    )


def mobius_left(p: Poset, k: int, verify: bool = True) -> IncidenceFunction:
    """The arity-k Moebius function: the solution of  a * zeta = delta_[k].

    k = 2 is the classical Moebius function.  The solve is cached per
    poset; on first computation the defining identity is re-verified by an
    actual convolution unless ``verify`` is disabled.
    """
    return _mobius(p, k, right=False, verify=verify)


def mobius_right(p: Poset, k: int, verify: bool = True) -> IncidenceFunction:
    """The right Moebius function: the solution of  zeta * a = delta_[k].

    Agrees with :func:`mobius_left` at k = 2 and generally differs for
    k > 2.
    """
    return _mobius(p, k, right=True, verify=verify)


def _mobius(p, k, right, verify):
    if k < 2:
        raise ArityMismatch("Moebius functions need arity >= 2")
    key = ("mobius", k, right)
    fn = p._cache.get(key)
    if fn is None:
        table = flag_table(p, k)
        values = _dispatch_mobius(table, right)
        fn = IncidenceFunction(p, k, values, table=table)
        if verify:
            _verify_mobius(p, k, fn, right)
        p._cache[key] = fn
    return fn


def _verify_mobius(p, k, fn, right):
    zeta = zeta_fn(p, k)
    prod = convolve(zeta, fn) if right else convolve(fn, zeta)
    if prod != delta_set(p, k, range(1, k + 1)):
        side = "zeta * a" if right else "a * zeta"
        raise AssertionError(f"Moebius solve failed to verify {side} = delta")
