"""Pure Python fallback for the hot kernels.

Works on arbitrary-precision integers (or any ring values supporting ``+``
and ``*``), so it doubles as the overflow-safe retry path behind the
compiled extension.
"""

from __future__ import annotations

from itertools import product as iter_product


def convolve(table, f_values, g_values):
    """Interleaved convolution of two value vectors over one flag table."""
    idx = table.index
    flags = table.flags
    out = [0] * len(flags)
    for i, x in enumerate(flags):
        first, last = x[0], x[-1]
        total = 0
        for y in iter_product(*table.intervals_for(x)):
            total += f_values[idx[(first,) + y]] * g_values[idx[y + (last,)]]
        out[i] = total
    return out


def mobius_left(table):
    """Solve a * zeta = delta_[n] by triangular elimination.

    In the defining sum over interleavings of a flag X, the pointwise
    largest term is X itself; every other term has strictly smaller rank
    sum, so processing flags by ascending rank sum isolates one unknown
    per equation.
    """
    flags = table.flags
    idx = table.index
    vals = [0] * len(flags)
    for i in table.order_ascending:
        x = flags[i]
        first = x[0]
        pivot = x[1:]
        total = 0
        for y in iter_product(*table.intervals_for(x)):
            if y != pivot:
                total += vals[idx[(first,) + y]]
        vals[i] = (1 if x.count(first) == len(x) else 0) - total
    return vals


def mobius_right(table):
    """Solve zeta * a = delta_[n]; mirror of :func:`mobius_left`.

    Here the pointwise smallest interleaving reproduces X itself and all
    other terms have strictly larger rank sum, so flags are processed by
    descending rank sum.
    """
    flags = table.flags
    idx = table.index
    vals = [0] * len(flags)
    for i in table.order_descending:
        x = flags[i]
        last = x[-1]
        pivot = x[:-1]
        total = 0
        for y in iter_product(*table.intervals_for(x)):
            if y != pivot:
                total += vals[idx[y + (last,)]]
        vals[i] = (1 if x.count(last) == len(x) else 0) - total
    return vals
