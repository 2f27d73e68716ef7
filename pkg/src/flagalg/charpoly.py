"""Generalized characteristic polynomials in several variables.

chi_k sums the arity-(k+1) Moebius function pinned at the bottom element
over all k-flags, weighting each flag by corank-exponent monomials:

    chi_k(P) = sum over X_1 <= ... <= X_k of
               mu(bottom, X_1, ..., X_k) * prod_j t_j^(rank(P) - rank(X_j))

chi_1 coincides with the classical characteristic polynomial.  The module
also carries the closed product form on Boolean lattices and the
hypothetical deletion-restriction right-hand side used to demonstrate
that no such recurrence can hold for k >= 2.
"""

from __future__ import annotations

from .errors import (
    InvalidParams,
    NotBoundedBelow,
    SizeLimitExceeded,
    VariableCountMismatch,
)
from .incidence import flag_table, mobius_left
from .polynomial import MultiPoly
from .poset import Poset

_EXPANSION_CAP = 5_000_000


def char_poly_k(p: Poset, k: int, max_flags=None) -> MultiPoly:
    """The k-variable characteristic polynomial (corank exponents)."""
    if k < 1:
        raise InvalidParams("char_poly_k needs k >= 1")
    if not p.is_bounded_below():
        raise NotBoundedBelow("characteristic polynomials need a bottom element")
    bottom = p.bottom()
    mob = mobius_left(p, k + 1)
    table = flag_table(p, k + 1, max_flags=max_flags)
    r = p.top_rank
    rank = p.rank
    terms: dict[tuple[int, ...], int] = {}
    for pos, f in enumerate(table.flags):
        if f[0] != bottom:
            continue
        v = mob.values[pos]
        if v == 0:
            continue
        e = tuple(r - rank[x] for x in f[1:])
        terms[e] = terms.get(e, 0) + v
    return MultiPoly(k, terms)


def alternating_chain(k: int, depth: int) -> MultiPoly:
    """sum_{i=0}^{depth} (-1)^i * t_1 ... t_{depth-i}, in k variables.

    At depth = k this is the one-element Boolean characteristic
    polynomial; at depth = k-1 it is the factor in the hypothetical
    deletion-restriction recurrence.
    """
    if depth > k:
        raise InvalidParams(f"depth {depth} exceeds variable count {k}")
    total = MultiPoly.constant(k, 0)
    prefix = MultiPoly.constant(k, 1)
    prefixes = [prefix]
    for j in range(1, depth + 1):
        prefix = prefix * MultiPoly.variable(k, j)
        prefixes.append(prefix)
    for i in range(depth + 1):
        term = prefixes[depth - i]
        total = total + (term if i % 2 == 0 else -term)
    return total


def boolean_char_k(n: int, k: int) -> MultiPoly:
    """Closed form on the rank-n Boolean lattice: the one-element

    polynomial raised to the n-th power, fully expanded.
    """
    if n < 1 or k < 1:
        raise InvalidParams("boolean_char_k needs n, k >= 1")
    if (n + 1) ** k > _EXPANSION_CAP:
        raise SizeLimitExceeded(f"expansion would exceed {_EXPANSION_CAP} monomials")
    return alternating_chain(k, k) ** n


def dr_rhs(chi_deletion: MultiPoly, chi_restriction: MultiPoly, k: int) -> MultiPoly:
    """The right-hand side a deletion-restriction recurrence would need:

    chi(deletion) - (sum_{i=0}^{k-1} (-1)^i t_1 ... t_{k-1-i}) * chi(restriction).

    At k = 1 this is the classical chi(deletion) - chi(restriction); for
    k >= 2 it fails to reproduce chi on a three-atom rank-2 lattice, which
    is the point of computing it.
    """
    if chi_deletion.k != k or chi_restriction.k != k:
        raise VariableCountMismatch(
            f"expected {k}-variable inputs, got {chi_deletion.k} and {chi_restriction.k}"
        )
    if chi_restriction.is_zero():
        return chi_deletion
    return chi_deletion - alternating_chain(k, k - 1) * chi_restriction
