"""Exact rational functions over Q(i) and the differential monomial M(f)."""

from __future__ import annotations

from .errors import HypothesisError, UndefinedPowerError, ZeroDivisionAlgebraError
from .exact import (
    ONE_POLY,
    ZERO_POLY,
    GaussianRational,
    Polynomial,
    format_polynomial,
    poly_eval,
    poly_gcd,
    squarefree_part,
)
from .monomial import MonomialSpec


class RationalFunction:
    """Reduced quotient ``num/den`` with ``den`` monic; zero is ``0/1``.

    Use :func:`rf_normalize` (or the constructor, which calls it) for
    arbitrary pairs.
    """

    __slots__ = ("num", "den", "_radical")

    def __init__(self, num, den=ONE_POLY):
        num = _poly(num)
        den = _poly(den)
        r = rf_normalize(num, den)
        self.num, self.den, self._radical = r.num, r.den, None

    @classmethod
    def _trusted(cls, num: Polynomial, den: Polynomial, radical=None) -> "RationalFunction":
        f = cls.__new__(cls)
        f.num, f.den, f._radical = num, den, radical
        return f

    @classmethod
    def from_polynomial(cls, p) -> "RationalFunction":
        return cls._trusted(_poly(p), ONE_POLY, ONE_POLY)

    @classmethod
    def constant(cls, c) -> "RationalFunction":
        return cls.from_polynomial(Polynomial.constant(c))

    def den_radical(self) -> Polynomial:
        """Monic squarefree part of the denominator (cached)."""
        if self._radical is None:
            self._radical = squarefree_part(self.den)
        return self._radical

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalFunction({format_rf(self)!r})"

    def __str__(self) -> str:
        return format_rf(self)

    def __add__(self, other):
        return rf_arith(self, _rf(other), "add")

    __radd__ = __add__

    def __sub__(self, other):
        return rf_arith(self, _rf(other), "sub")

    def __rsub__(self, other):
        return rf_arith(_rf(other), self, "sub")

    def __mul__(self, other):
        return rf_arith(self, _rf(other), "mul")

    __rmul__ = __mul__

    def __truediv__(self, other):
        return rf_arith(self, _rf(other), "div")

    def __rtruediv__(self, other):
        return rf_arith(_rf(other), self, "div")

    def __neg__(self):
        return RationalFunction._trusted(-self.num, self.den, self._radical)

    def __pow__(self, e: int):
        return rf_pow(self, e)

    def derivative(self, k: int = 1) -> "RationalFunction":
        return rf_derivative(self, k)

    def __call__(self, z) -> GaussianRational:
        return rf_eval(self, z)


def _poly(p) -> Polynomial:
    if isinstance(p, Polynomial):
        return p
    return Polynomial.constant(p)


def _rf(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    return RationalFunction.from_polynomial(_poly(x))


def format_rf(f: RationalFunction) -> str:
    """Grammar-compatible text that parses back to ``f``."""
    num = format_polynomial(f.num)
    if f.den == ONE_POLY:
        return num
    return f"({num})/({format_polynomial(f.den)})"


def rf_normalize(num: Polynomial, den: Polynomial) -> RationalFunction:
    if den.is_zero():
        raise ZeroDivisionAlgebraError("rational function with zero denominator")
    if num.is_zero():
        return RationalFunction._trusted(ZERO_POLY, ONE_POLY, ONE_POLY)
    g = poly_gcd(num, den)
    if g.degree > 0:
        num = num.exact_div(g)
        den = den.exact_div(g)
    lc = den.leading()
    if lc != 1:
        inv = lc.inverse()
        num, den = num.scale(inv), den.scale(inv)
    return RationalFunction._trusted(num, den)


def rf_arith(a: RationalFunction, b: RationalFunction, kind: str) -> RationalFunction:
    if kind == "add" or kind == "sub":
        other_num = b.num if kind == "add" else -b.num
        if a.den == b.den:
            return rf_normalize(a.num + other_num, a.den)
        return rf_normalize(a.num * b.den + other_num * a.den, a.den * b.den)
    if kind == "mul":
        return _mul_reduced(a.num, a.den, b.num, b.den)
    if kind == "div":
        if b.is_zero():
            raise ZeroDivisionAlgebraError("division by the zero rational function")
        lc = b.num.leading().inverse()
        # 1/b = (den/lc)/(num/lc) keeps the new denominator monic
        return _mul_reduced(a.num, a.den, b.den.scale(lc), b.num.scale(lc))
    raise ValueError(f"unknown rational-function operation {kind!r}")


def _mul_reduced(a: Polynomial, b: Polynomial, c: Polynomial, d: Polynomial) -> RationalFunction:
    # (a/b)(c/d) with both inputs reduced: only cross cancellations are possible
    if a.is_zero() or c.is_zero():
        return RationalFunction._trusted(ZERO_POLY, ONE_POLY, ONE_POLY)
    if d.degree > 0 and a.degree > 0:
        g = poly_gcd(a, d)
        if g.degree > 0:
            a, d = a.exact_div(g), d.exact_div(g)
    if b.degree > 0 and c.degree > 0:
        g = poly_gcd(c, b)
        if g.degree > 0:
            c, b = c.exact_div(g), b.exact_div(g)
    num, den = a * c, b * d
    lc = den.leading()
    if lc != 1:
        inv = lc.inverse()
        num, den = num.scale(inv), den.scale(inv)
    return RationalFunction._trusted(num, den)


def rf_pow(f: RationalFunction, e: int) -> RationalFunction:
    if e < 0:
        raise ValueError("rf_pow takes a non-negative exponent")
    if e == 0:
        if f.is_zero():
            raise UndefinedPowerError("0^0 is undefined")
        return RationalFunction.from_polynomial(ONE_POLY)
    # coprime parts stay coprime under powers; rad(den^e) = rad(den)
    return RationalFunction._trusted(f.num**e, f.den**e, f._radical)


def rf_derivative(f: RationalFunction, k: int = 1) -> RationalFunction:
    """Exact k-th derivative.

    For reduced ``P/Q`` with ``r`` the squarefree part of ``Q``, the reduced
    derivative is ``(P' r - P Q'/(Q/r)) / (Q r)``: a pole of order ``e``
    becomes a pole of order exactly ``e + 1``, so no gcd is needed after the
    first radical computation.
    """
    if k < 1:
        raise ValueError("derivative order must be positive")
    if f.den.degree == 0:
        return RationalFunction._trusted(f.num.derivative(k), ONE_POLY, ONE_POLY)
    r = f.den_radical()
    num, den = f.num, f.den
    # cofactor = den / r, tracked incrementally: den_{j+1} = den_j * r
    cofactor = den.exact_div(r)
    for _ in range(k):
        # exact: every root of den is a root of r, one order higher in den than in cofactor
        dden_over_cof = den.derivative().exact_div(cofactor)
        num = num.derivative() * r - num * dden_over_cof
        cofactor = den
        den = den * r
        if num.is_zero():
            return RationalFunction._trusted(ZERO_POLY, ONE_POLY, ONE_POLY)
    return RationalFunction._trusted(num, den, r)


def rf_eval(f: RationalFunction, z) -> GaussianRational:
    d = poly_eval(f.den, z)
    if not d:
        raise ZeroDivisionAlgebraError(f"{z} is a pole of {f}")
    return poly_eval(f.num, z) / d


def deg_infinity(f: RationalFunction) -> int:
    if f.is_zero():
        raise HypothesisError("degree at infinity of the zero function is undefined", reason="zero-function")
    return f.num.degree - f.den.degree


def build_monomial(f: RationalFunction, spec: MonomialSpec) -> RationalFunction:
    """M(f) = f^n (f^n1)^(t1) ... (f^nk)^(tk), exact and reduced."""
    if f.is_zero():
        raise HypothesisError("M(f) needs f != 0", reason="zero-function")
    if f.den.degree > 0:
        f.den_radical()
    factors = []
    if spec.n:
        factors.append(rf_pow(f, spec.n))
    for nj, tj in spec.factors:
        factors.append(rf_derivative(rf_pow(f, nj), tj))
    # Each factor's numerator is coprime to den(f): poles of f stay poles of
    # every factor, so the plain product is already reduced.
    num, den = ONE_POLY, ONE_POLY
    for g in factors:
        if g.is_zero():
            return RationalFunction._trusted(ZERO_POLY, ONE_POLY, ONE_POLY)
        num = num * g.num
        den = den * g.den
    return RationalFunction._trusted(num, den, f._radical)
