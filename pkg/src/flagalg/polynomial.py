"""Exact integer-coefficient polynomials: univariate and multivariate.

Small dict-backed implementations tuned for the needs of the library:
no zero terms are ever stored, arithmetic is exact (Python integers), and
printing follows a fixed graded-lexicographic order so golden-output tests
can compare text verbatim.
"""

from __future__ import annotations

from .errors import VariableCountMismatch


class Polynomial:
    """Univariate polynomial with exact integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {d: c for d, c in (coeffs or {}).items() if c != 0}

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({0: 1})

    @classmethod
    def constant(cls, c):
        return cls({0: c})

    @classmethod
    def monomial(cls, degree, c=1):
        return cls({degree: c})

    @property
    def degree(self):
        """Largest stored degree; -1 for the zero polynomial."""
        return max(self.coeffs, default=-1)

    def coefficient(self, d):
        return self.coeffs.get(d, 0)

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(other)
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(other)
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = out.get(d, 0) + c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({d: -c for d, c in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(other)
        out = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                d = d1 + d2
                out[d] = out.get(d, 0) + c1 * c2
        return Polynomial(out)

    __rmul__ = __mul__

    def __call__(self, value):
        total = 0
        for d, c in self.coeffs.items():
            total += c * value**d
        return total

    def reversed_through(self, r):
        """t^r * p(1/t); requires degree <= r."""
        if self.degree > r:
            raise ValueError(f"degree {self.degree} exceeds reversal bound {r}")
        return Polynomial({r - d: c for d, c in self.coeffs.items()})

    def shifted(self, m):
        """Multiply by t^m."""
        return Polynomial({d + m: c for d, c in self.coeffs.items()})

    def compose(self, inner):
        """Substitute ``inner`` (Polynomial or MultiPoly) for the variable."""
        if isinstance(inner, MultiPoly):
            total = MultiPoly.constant(inner.k, 0)
            power = MultiPoly.constant(inner.k, 1)
        else:
            total = Polynomial.zero()
            power = Polynomial.one()
        last = 0
        for d in sorted(self.coeffs):
            for _ in range(d - last):
                power = power * inner
            last = d
            total = total + power * self.coeffs[d]
        return total

    def format(self, var: str = "t") -> str:
        return _format_terms(
            [((d,), c) for d, c in sorted(self.coeffs.items(), reverse=True)],
            [var],
        )

    def format_latex(self, var: str = "t") -> str:
        return _format_terms(
            [((d,), c) for d, c in sorted(self.coeffs.items(), reverse=True)],
            [var],
            latex=True,
        )

    def to_terms(self):
        """JSON-friendly [[degree, coefficient], ...], descending degree."""
        return [[d, self.coeffs[d]] for d in sorted(self.coeffs, reverse=True)]

    @classmethod
    def from_terms(cls, terms):
        return cls({int(d): int(c) for d, c in terms})

    def __repr__(self):
        return f"Polynomial({self.format()})"


class MultiPoly:
    """Polynomial in variables t1..tk with exact integer coefficients.

    Terms map exponent vectors (length-k tuples) to coefficients; printing
    is graded lexicographic with t1 > t2 > ... to match the text formats
    used throughout.
    """

    __slots__ = ("k", "terms")

    def __init__(self, k, terms=None):
        self.k = k
        self.terms = {tuple(e): c for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def constant(cls, k, c):
        return cls(k, {(0,) * k: c})

    @classmethod
    def variable(cls, k, j):
        """t_j for 1-based j."""
        if not 1 <= j <= k:
            raise VariableCountMismatch(f"variable index {j} not in 1..{k}")
        e = [0] * k
        e[j - 1] = 1
        return cls(k, {tuple(e): 1})

    def is_zero(self):
        return not self.terms

    def _coerce(self, other):
        if isinstance(other, int):
            return MultiPoly.constant(self.k, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if other.k != self.k:
            raise VariableCountMismatch(f"{self.k} vs {other.k} variables")
        return other

    def __eq__(self, other):
        if isinstance(other, int):
            other = MultiPoly.constant(self.k, other)
        return (
            isinstance(other, MultiPoly)
            and self.k == other.k
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.k, frozenset(self.terms.items())))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.k, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.k, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.k, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers unsupported")
        result = MultiPoly.constant(self.k, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def coefficient(self, exponents):
        return self.terms.get(tuple(exponents), 0)

    def evaluate(self, values):
        if len(values) != self.k:
            raise VariableCountMismatch(f"need {self.k} values")
        total = 0
        for e, c in self.terms.items():
            term = c
            for ei, v in zip(e, values):
                term *= v**ei
            total += term
        return total

    def _sorted_terms(self):
        return sorted(
            self.terms.items(), key=lambda item: (sum(item[0]), item[0]), reverse=True
        )

    def format(self, names=None) -> str:
        names = names or [f"t{j}" for j in range(1, self.k + 1)]
        return _format_terms(self._sorted_terms(), names)

    def format_latex(self) -> str:
        names = [f"t_{j}" for j in range(1, self.k + 1)]
        return _format_terms(self._sorted_terms(), names, latex=True)

    def to_terms(self):
        """JSON-friendly [[exponent vector, coefficient], ...] in print order."""
        return [[list(e), c] for e, c in self._sorted_terms()]

    @classmethod
    def from_terms(cls, k, terms):
        return cls(k, {tuple(int(x) for x in e): int(c) for e, c in terms})

    def __repr__(self):
        return f"MultiPoly({self.format()})"


def _format_monomial(exponents, names, latex):
    parts = []
    for e, name in zip(exponents, names):
        if e == 0:
            continue
        if e == 1:
            parts.append(name)
        elif latex:
            parts.append(f"{name}^{{{e}}}")
        else:
            parts.append(f"{name}^{e}")
    sep = "" if latex else "*"
    return sep.join(parts)


def _format_terms(ordered_terms, names, latex=False):
    if not ordered_terms:
        return "0"
    pieces = []
    for exponents, coeff in ordered_terms:
        mono = _format_monomial(exponents, names, latex)
        mag = abs(coeff)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        elif latex:
            body = f"{mag}{mono}"
        else:
            body = f"{mag}*{mono}"
        pieces.append(("-" if coeff < 0 else "+", body))
    sign, body = pieces[0]
    text = body if sign == "+" else f"-{body}"
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text
