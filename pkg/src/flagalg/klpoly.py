"""Kazhdan-Lusztig polynomials of graded bounded posets, two independent ways.

``kl_recursive`` solves the defining functional equation

    t^r P(1/t) = sum over F of chi(P_F, t) * P(P^F, t)

bottom-up with interval memoization up to isomorphism; the equation is
overdetermined, so mirrored low-degree coefficients, a vanishing middle
coefficient, and constant term 1 are all re-checked on every solve.

``kl_closed`` evaluates the coefficient-by-coefficient Whitney-number
formula driven by the symbolic index families; the two routes agreeing
exactly is the library's central cross-validation.
"""

from __future__ import annotations

from . import klindex
from .errors import InconsistentRecursion, NotBounded, NotBoundedBelow, NotLattice, RankTooSmall
from .isomorphism import are_isomorphic, certificate
from .polynomial import Polynomial
from .poset import Poset
from .whitney import whitney_second

_KL_MEMO: dict[tuple, list] = {}


def clear_memo():
    _KL_MEMO.clear()


def mobius_from_bottom(p: Poset) -> list[int]:
    """Classical Moebius values mu(bottom, x) for every x; cached per poset."""
    vec = p._cache.get("mobius_from_bottom")
    if vec is None:
        if not p.is_bounded_below():
            raise NotBoundedBelow("needs a unique minimal element")
        vec = [0] * p.n
        for x in sorted(range(p.n), key=lambda e: p.rank[e]):
            mask = p.down_mask(x) ^ (1 << x)
            total = 0
            while mask:
                low = mask & -mask
                total += vec[low.bit_length() - 1]
                mask ^= low
            vec[x] = 1 if p.rank[x] == 0 else -total
        p._cache["mobius_from_bottom"] = vec
    return vec


def char_poly1(p: Poset) -> Polynomial:
    """Characteristic polynomial with corank exponents:

    sum over x of mu(bottom, x) * t^(rank(P) - rank(x)).
    """
    mu = mobius_from_bottom(p)
    out = {}
    r = p.top_rank
    for x in range(p.n):
        d = r - p.rank[x]
        out[d] = out.get(d, 0) + mu[x]
    return Polynomial(out)


def _char_poly_below(p: Poset, f: int, mu) -> Polynomial:
    # chi of the localization at f, read off the global Moebius vector:
    # down-sets leave every interval [bottom, x] unchanged.
    out = {}
    rf = p.rank[f]
    mask = p.down_mask(f)
    while mask:
        low = mask & -mask
        x = low.bit_length() - 1
        d = rf - p.rank[x]
        out[d] = out.get(d, 0) + mu[x]
        mask ^= low
    return Polynomial(out)


def kl_recursive(p: Poset) -> Polynomial:
    """Solve the defining recursion; raises InconsistentRecursion if the

    functional equation fails its overdetermined checks (expected only on
    inputs that are not graded bounded lattices).
    """
    if not p.is_bounded_below():
        raise NotBounded("needs a unique minimal element")
    maxs = [x for x in range(p.n) if p.up_mask(x) == (1 << x)]
    if len(maxs) != 1:
        raise NotBounded("needs a unique maximal element")
    return _kl_rec(p)


def _kl_rec(p: Poset) -> Polynomial:
    r = p.top_rank
    if r == 0:
        return Polynomial.one()
    cert = certificate(p)
    for stored, poly in _KL_MEMO.get(cert, []):
        if are_isomorphic(p, stored):
            return poly
    mu = mobius_from_bottom(p)
    bottom = p.bottom()
    rhs = Polynomial.zero()
    for f in range(p.n):
        if f == bottom:
            continue
        rhs = rhs + _char_poly_below(p, f, mu) * _kl_rec(p.restriction(f))
    coeffs = {}
    for i in range((r + 1) // 2):
        c = rhs.coefficient(r - i)
        if c:
            coeffs[i] = c
    poly = Polynomial(coeffs)
    if poly.coefficient(0) != 1 or poly.reversed_through(r) - poly != rhs:
        raise InconsistentRecursion(
            f"functional equation inconsistent on {p!r}; "
            f"rhs = {rhs.format()}, solved = {poly.format()}"
        )
    _KL_MEMO.setdefault(cert, []).append((p, poly))
    return poly


def _require_lattice(p: Poset):
    diag = p.validate()
    if not (diag.graded and diag.lattice):
        raise NotLattice("closed coefficient formula is asserted for graded lattices only")


def kl_coefficient(p: Poset, k: int, check_lattice: bool = True) -> int:
    """Degree-k coefficient by the closed Whitney-number formula."""
    if check_lattice:
        _require_lattice(p)
    r = p.top_rank
    if not 1 <= k < r / 2:
        raise RankTooSmall(f"need 1 <= k < rank/2 = {r / 2}")
    total = 0
    for term in klindex.index_family(k):
        heavy = whitney_second(p, klindex.instantiate(klindex.top_heavy(term), r))
        plain = whitney_second(p, klindex.instantiate(term.entries, r))
        total += term.sign * (heavy - plain)
    return total


def kl_closed(p: Poset, check_lattice: bool = True) -> Polynomial:
    """Constant term 1 plus the closed-formula coefficients for 1 <= k < rank/2.

    Contract: equals ``kl_recursive(p)`` exactly on graded bounded lattices.
    """
    if check_lattice:
        _require_lattice(p)
    r = p.top_rank
    coeffs = {0: 1}
    for k in range(1, (r + 1) // 2):
        c = kl_coefficient(p, k, check_lattice=False)
        if c:
            coeffs[k] = c
    return Polynomial(coeffs)
