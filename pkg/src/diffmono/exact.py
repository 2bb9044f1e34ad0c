"""Exact arithmetic over Q(i) and dense univariate polynomials.

Rationals are ``gmpy2.mpq`` values (always reduced, positive denominator).
A :class:`Polynomial` keeps its real and imaginary coefficient parts in two
parallel tuples so the inner loops of multiplication, division and gcd never
allocate :class:`GaussianRational` objects.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpq

from .errors import UndefinedGcdError, ZeroDivisionAlgebraError, ZeroPolynomialError

Rational = type(mpq(0))

_ZERO = mpq(0)
_ONE = mpq(1)


def rational(value) -> "Rational":
    """Coerce ints, Fractions, mpq or ``"a/b"`` strings to an exact rational.

    Floats are rejected: nothing inexact may enter the exact layer.
    """
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        return mpq(int(value))
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, Fraction) or isinstance(value, _RationalABC):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        return mpq(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def _qstr(q) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im != 0:
                raise TypeError("imaginary part given twice")
            self.re, self.im = re.re, re.im
            return
        self.re = rational(re)
        self.im = rational(im)

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            raise TypeError("floating complex values are not exact")
        return cls(value)

    def __repr__(self) -> str:
        return f"GaussianRational({_qstr(self.re)!r}, {_qstr(self.im)!r})"

    def __str__(self) -> str:
        return format_gaussian(self)

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __neg__(self) -> "GaussianRational":
        return _gr(-self.re, -self.im)

    def __add__(self, other) -> "GaussianRational":
        o = _as_gr(other)
        if o is None:
            return NotImplemented
        return _gr(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other) -> "GaussianRational":
        o = _as_gr(other)
        if o is None:
            return NotImplemented
        return _gr(self.re - o.re, self.im - o.im)

    def __rsub__(self, other) -> "GaussianRational":
        o = _as_gr(other)
        if o is None:
            return NotImplemented
        return _gr(o.re - self.re, o.im - self.im)

    def __mul__(self, other) -> "GaussianRational":
        o = _as_gr(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        return _gr(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "GaussianRational":
        o = _as_gr(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> "GaussianRational":
        o = _as_gr(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int) -> "GaussianRational":
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return _gr(self.re, -self.im)

    def norm(self):
        """Squared modulus ``re^2 + im^2`` (exact rational)."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionAlgebraError("inverse of zero in Q(i)")
        return _gr(self.re / n, -self.im / n)

    def is_real(self) -> bool:
        return self.im == 0

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def to_complex(self) -> complex:
        return complex(self)


def _gr(re, im) -> GaussianRational:
    g = GaussianRational.__new__(GaussianRational)
    g.re = re
    g.im = im
    return g


def _as_gr(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Rational, Fraction)):
        return _gr(rational(value), _ZERO)
    return None


ZERO = _gr(_ZERO, _ZERO)
ONE = _gr(_ONE, _ZERO)
I = _gr(_ZERO, _ONE)


def format_gaussian(c: GaussianRational) -> str:
    """Render in the expression grammar, e.g. ``-3/2``, ``i``, ``(1/2+3/4*i)``."""
    re, im = c.re, c.im
    if im == 0:
        return _qstr(re)
    if im == 1:
        ipart = "i"
    elif im == -1:
        ipart = "-i"
    else:
        ipart = f"{_qstr(im)}*i"
    if re == 0:
        return ipart
    sep = "" if ipart.startswith("-") else "+"
    return f"({_qstr(re)}{sep}{ipart})"


# ---------------------------------------------------------------- polynomials


def _trim(re: list, im: list) -> None:
    while re and not re[-1] and not im[-1]:
        re.pop()
        im.pop()


class Polynomial:
    """Dense polynomial in ``z`` over Q(i); index ``j`` holds the ``z^j`` coefficient.

    The zero polynomial has no coefficients and degree -1.
    """

    __slots__ = ("_re", "_im", "_hash")

    def __init__(self, coefficients: Iterable = ()):
        re, im = [], []
        for c in coefficients:
            g = GaussianRational.coerce(c)
            re.append(g.re)
            im.append(g.im)
        _trim(re, im)
        self._re = tuple(re)
        self._im = tuple(im)
        self._hash = None

    @classmethod
    def _raw(cls, re: list, im: list) -> "Polynomial":
        _trim(re, im)
        p = cls.__new__(cls)
        p._re = tuple(re)
        p._im = tuple(im)
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c=1) -> "Polynomial":
        return cls([0] * degree + [c])

    @classmethod
    def from_roots(cls, roots: Iterable, leading=1) -> "Polynomial":
        p = cls.constant(leading)
        for r in roots:
            p = p * cls([-GaussianRational.coerce(r), 1])
        return p

    # -- basic properties

    @property
    def coefficients(self) -> tuple:
        return tuple(_gr(a, b) for a, b in zip(self._re, self._im))

    @property
    def degree(self) -> int:
        return len(self._re) - 1

    def is_zero(self) -> bool:
        return not self._re

    def is_constant(self) -> bool:
        return len(self._re) <= 1

    def leading(self) -> GaussianRational:
        if not self._re:
            return ZERO
        return _gr(self._re[-1], self._im[-1])

    def __getitem__(self, j: int) -> GaussianRational:
        if 0 <= j < len(self._re):
            return _gr(self._re[j], self._im[j])
        return ZERO

    def __len__(self) -> int:
        return len(self._re)

    def __bool__(self) -> bool:
        return bool(self._re)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._re == other._re and self._im == other._im
        if isinstance(other, (int, Rational, Fraction, GaussianRational)):
            return self == Polynomial.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._re, self._im))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)

    # -- ring operations

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw([-a for a in self._re], [-b for b in self._im])

    def __add__(self, other) -> "Polynomial":
        o = _as_poly(other)
        if o is None:
            return NotImplemented
        n = max(len(self._re), len(o._re))
        re = [_ZERO] * n
        im = [_ZERO] * n
        for j, (a, b) in enumerate(zip(self._re, self._im)):
            re[j] = a
            im[j] = b
        for j, (a, b) in enumerate(zip(o._re, o._im)):
            re[j] += a
            im[j] += b
        return Polynomial._raw(re, im)

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        o = _as_poly(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "Polynomial":
        o = _as_poly(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "Polynomial":
        o = _as_poly(other)
        if o is None:
            return NotImplemented
        if not self._re or not o._re:
            return ZERO_POLY
        ar, ai, br, bi = self._re, self._im, o._re, o._im
        n = len(ar) + len(br) - 1
        re = [_ZERO] * n
        im = [_ZERO] * n
        b_real = not any(bi)
        for j, (x, y) in enumerate(zip(ar, ai)):
            if not x and not y:
                continue
            if b_real:
                for l, u in enumerate(br):
                    re[j + l] += x * u
                    im[j + l] += y * u
            else:
                for l, (u, v) in enumerate(zip(br, bi)):
                    re[j + l] += x * u - y * v
                    im[j + l] += x * v + y * u
        return Polynomial._raw(re, im)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = ONE_POLY
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        c = GaussianRational.coerce(c)
        x, y = c.re, c.im
        if not y:
            return Polynomial._raw([a * x for a in self._re], [b * x for b in self._im])
        return Polynomial._raw(
            [a * x - b * y for a, b in zip(self._re, self._im)],
            [a * y + b * x for a, b in zip(self._re, self._im)],
        )

    def monic(self) -> "Polynomial":
        if not self._re:
            return self
        lr, li = self._re[-1], self._im[-1]
        if lr == 1 and not li:
            return self
        return self.scale(_gr(lr, li).inverse())

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if not other._re:
            raise ZeroDivisionAlgebraError("polynomial division by zero")
        q, r = _divmod(self._re, self._im, other._re, other._im, want_quotient=True)
        return q, r

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return self.divmod(other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        if not other._re:
            raise ZeroDivisionAlgebraError("polynomial division by zero")
        return _divmod(self._re, self._im, other._re, other._im, want_quotient=False)[1]

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        """Quotient ``self / other``; raises ``ValueError`` if the remainder is nonzero."""
        q, r = self.divmod(other)
        if r:
            raise ValueError(f"{other} does not divide {self}")
        return q

    def divides(self, other: "Polynomial") -> bool:
        if not self._re:
            return not other._re
        return not (other % self)

    def derivative(self, k: int = 1) -> "Polynomial":
        if k < 1:
            raise ValueError("derivative order must be positive")
        n = len(self._re)
        if k >= n:
            return ZERO_POLY
        re, im = [], []
        for j in range(k, n):
            f = 1
            for s in range(j - k + 1, j + 1):
                f *= s
            re.append(self._re[j] * f)
            im.append(self._im[j] * f)
        return Polynomial._raw(re, im)

    def __call__(self, z) -> GaussianRational:
        return poly_eval(self, z)

    def to_complex_coefficients(self) -> list[complex]:
        return [complex(float(a), float(b)) for a, b in zip(self._re, self._im)]


def _as_poly(value):
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, (int, Rational, Fraction, GaussianRational)):
        return Polynomial.constant(value)
    return None


def _divmod(ar, ai, br, bi, want_quotient: bool):
    n, m = len(ar), len(br)
    if n < m:
        return ZERO_POLY, Polynomial._raw(list(ar), list(ai))
    lr, li = br[-1], bi[-1]
    monic = lr == 1 and not li
    if not monic:
        nrm = lr * lr + li * li
        inv_r, inv_i = lr / nrm, -li / nrm
    b_real = not any(bi)
    rr, ri = list(ar), list(ai)
    qr_all = [_ZERO] * (n - m + 1)
    qi_all = [_ZERO] * (n - m + 1)
    for k in range(n - m, -1, -1):
        cr, ci = rr[k + m - 1], ri[k + m - 1]
        if not cr and not ci:
            continue
        if monic:
            qr, qi = cr, ci
        else:
            qr, qi = cr * inv_r - ci * inv_i, cr * inv_i + ci * inv_r
        qr_all[k], qi_all[k] = qr, qi
        if b_real and not qi:
            for j in range(m - 1):
                u = br[j]
                rr[k + j] -= qr * u
        elif b_real:
            for j in range(m - 1):
                u = br[j]
                rr[k + j] -= qr * u
                ri[k + j] -= qi * u
        else:
            for j in range(m - 1):
                u, v = br[j], bi[j]
                rr[k + j] -= qr * u - qi * v
                ri[k + j] -= qr * v + qi * u
        rr[k + m - 1] = _ZERO
        ri[k + m - 1] = _ZERO
    rem = Polynomial._raw(rr[: m - 1], ri[: m - 1])
    quo = Polynomial._raw(qr_all, qi_all) if want_quotient else None
    return quo, rem


ZERO_POLY = Polynomial()
ONE_POLY = Polynomial([1])
Z = Polynomial([0, 1])


def format_polynomial(p: Polynomial, var: str = "z") -> str:
    """Grammar-compatible text, highest power first: ``z^2 - 2*z + (1+i)``."""
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for j in range(p.degree, -1, -1):
        c = p[j]
        if not c:
            continue
        neg = False
        if c.im == 0 and c.re < 0:
            neg, c = True, -c
        elif c.re == 0 and c.im < 0:
            neg, c = True, -c
        if j == 0:
            body = format_gaussian(c)
        else:
            mono = var if j == 1 else f"{var}^{j}"
            body = mono if c == ONE else f"{format_gaussian(c)}*{mono}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


# ------------------------------------------------------------ spec operations


def poly_arith(a: Polynomial, b: Polynomial, kind: str) -> Polynomial:
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation {kind!r}")


def poly_derivative(a: Polynomial, k: int = 1) -> Polynomial:
    return a.derivative(k)


def poly_eval(a: Polynomial, z) -> GaussianRational:
    """Horner evaluation at an exact point."""
    z = GaussianRational.coerce(z)
    x, y = z.re, z.im
    sr, si = _ZERO, _ZERO
    for cr, ci in zip(reversed(a._re), reversed(a._im)):
        sr, si = sr * x - si * y + cr, sr * y + si * x + ci
    return _gr(sr, si)


# ------------------------------------------------------------------------ gcd

# Below this degree the plain Euclidean sequence is already cheap.
CERTIFICATE_MIN_DEGREE = 6


def _find_modulus(start: int) -> tuple[int, int]:
    p = int(gmpy2.next_prime(start))
    while p % 4 != 1:
        p = int(gmpy2.next_prime(p))
    g = 2
    while True:
        s = pow(g, (p - 1) // 4, p)
        if s * s % p == p - 1:
            return p, s
        g += 1


# primes p = 1 (mod 4) with a square root s of -1, so i -> s is a ring map
_MODULI = [_find_modulus(2**61 + 2**40 * j) for j in range(3)]


def _reduce_mod(a: Polynomial, p: int, s: int) -> list[int] | None:
    out = []
    for re, im in zip(a._re, a._im):
        if re.denominator % p == 0 or im.denominator % p == 0:
            return None
        x = re.numerator * pow(re.denominator, -1, p) if re else 0
        if im:
            x += s * im.numerator * pow(im.denominator, -1, p)
        out.append(x % p)
    if not out or out[-1] == 0:
        return None
    return out


def _gcd_degree_mod(a: list[int], b: list[int], p: int) -> int:
    a, b = a[:], b[:]
    while b:
        inv = pow(b[-1], -1, p)
        db = len(b) - 1
        while len(a) >= len(b):
            c = a[-1] * inv % p
            if c:
                off = len(a) - len(b)
                for j in range(db):
                    a[off + j] = (a[off + j] - c * b[j]) % p
            a.pop()
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return len(a) - 1


def coprime_certificate(a: Polynomial, b: Polynomial) -> bool:
    """True only if ``gcd(a, b) = 1`` is proven by reduction modulo a prime ideal.

    Reduction at a prime of Z[i] that keeps both leading coefficients can
    only raise the gcd degree, so a unit gcd mod p is a unit gcd over Q(i).
    ``False`` means "not proven", never "not coprime".
    """
    for p, s in _MODULI:
        ra, rb = _reduce_mod(a, p, s), _reduce_mod(b, p, s)
        if ra is None or rb is None:
            continue
        return _gcd_degree_mod(ra, rb, p) == 0
    return False


def euclid_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd by the Euclidean remainder sequence over Q(i)."""
    if a.is_zero() and b.is_zero():
        raise UndefinedGcdError("gcd(0, 0) is undefined")
    if a.degree < b.degree:
        a, b = b, a
    a = a.monic()
    b = b.monic()
    while b:
        if b.degree == 0:
            return ONE_POLY
        _, r = _divmod(a._re, a._im, b._re, b._im, want_quotient=False)
        a, b = b, r.monic()
    return a


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd of ``a`` and ``b``.

    Large inputs first try :func:`coprime_certificate`; anything it cannot
    prove coprime goes through :func:`euclid_gcd`.
    """
    if a.is_zero() and b.is_zero():
        raise UndefinedGcdError("gcd(0, 0) is undefined")
    if min(a.degree, b.degree) >= CERTIFICATE_MIN_DEGREE and coprime_certificate(a, b):
        return ONE_POLY
    return euclid_gcd(a, b)


def squarefree_decompose(a: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: ``[(factor, multiplicity), ...]`` with monic, pairwise coprime factors.

    A nonzero constant has the empty decomposition.
    """
    if a.is_zero():
        raise ZeroPolynomialError("squarefree decomposition of the zero polynomial")
    if a.degree == 0:
        return []
    da = a.derivative()
    g = poly_gcd(a, da)
    b = a.exact_div(g)
    c = da.exact_div(g)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        h = poly_gcd(b, d)
        b = b.exact_div(h)
        c = d.exact_div(h)
        d = c - b.derivative() if b.degree > 0 else ZERO_POLY
        if h.degree > 0:
            out.append((h, i))
        i += 1
    return out


def squarefree_part(a: Polynomial) -> Polynomial:
    """Monic product of the distinct irreducible factors of ``a``."""
    if a.is_zero():
        raise ZeroPolynomialError("squarefree part of the zero polynomial")
    if a.degree <= 0:
        return ONE_POLY
    return a.exact_div(poly_gcd(a, a.derivative())).monic()


def distinct_root_count(a: Polynomial) -> int:
    return squarefree_part(a).degree


def multiplicity_profile(decomposition: Sequence[tuple[Polynomial, int]]) -> list[tuple[int, int]]:
    """Collapse a squarefree decomposition to ``[(multiplicity, number_of_roots), ...]``."""
    return [(m, f.degree) for f, m in decomposition]
