import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diffmono.errors import UndefinedGcdError, ZeroDivisionAlgebraError, ZeroPolynomialError
from diffmono.exact import (
    CERTIFICATE_MIN_DEGREE,
    I,
    GaussianRational,
    Polynomial,
    Z,
    coprime_certificate,
    distinct_root_count,
    euclid_gcd,
    format_gaussian,
    format_polynomial,
    multiplicity_profile,
    poly_arith,
    poly_derivative,
    poly_eval,
    poly_gcd,
    squarefree_decompose,
    squarefree_part,
)
from diffmono.oracle import numeric_distinct_roots

from helpers import nonzero_poly, poly_with_roots

gaussian_ints = st.builds(GaussianRational, st.integers(-3, 3), st.integers(-3, 3))
polys = st.lists(gaussian_ints, max_size=9).map(Polynomial)


# ------------------------------------------------------------ Gaussian field


def test_gaussian_arithmetic():
    a = GaussianRational(Fraction(1, 2), 3)
    b = GaussianRational(-2, Fraction(3, 4))
    assert a + b - b == a
    assert (a * b) / b == a
    assert I * I == -1
    assert a * a.inverse() == 1
    assert a.conjugate() == GaussianRational(Fraction(1, 2), -3)
    assert a.norm() == Fraction(37, 4)


def test_gaussian_rejects_floats_and_zero_division():
    with pytest.raises(TypeError):
        GaussianRational(0.5, 0)
    with pytest.raises(ZeroDivisionAlgebraError):
        GaussianRational(1) / GaussianRational(0)


@pytest.mark.parametrize("value,text", [
    (GaussianRational(Fraction(-3, 2)), "-3/2"),
    (I, "i"),
    (GaussianRational(Fraction(1, 2), Fraction(3, 4)), "(1/2+3/4*i)"),
    (GaussianRational(0, -2), "-2*i"),
])
def test_format_gaussian(value, text):
    assert format_gaussian(value) == text


# ----------------------------------------------------------- polynomial ops


def test_poly_arith_examples():
    assert poly_arith(Z + 1, Z - 1, "mul") == Z ** 2 - 1
    p = Polynomial([1, 2, 3])
    assert poly_arith(p, Polynomial(), "add") == p
    assert poly_arith(2 * Z, 3 * Z ** 2, "mul") == 6 * Z ** 3
    with pytest.raises(ValueError):
        poly_arith(p, p, "div")


def test_poly_derivative_examples():
    assert poly_derivative(Z ** 4, 1) == 4 * Z ** 3
    assert poly_derivative(Z ** 4, 4) == Polynomial([24])
    assert poly_derivative(Polynomial([5]), 1).is_zero()


def test_poly_eval_examples():
    assert poly_eval(Z ** 2 + 1, I) == 0
    assert poly_eval(Z ** 3, GaussianRational(2)) == 8
    p = Polynomial([GaussianRational(7, -2), 1, 1])
    assert poly_eval(p, GaussianRational(0)) == GaussianRational(7, -2)


def test_format_polynomial():
    assert format_polynomial((Z - 1) ** 2) == "z^2 - 2*z + 1"
    assert format_polynomial(Polynomial()) == "0"


def test_divmod_and_exact_div():
    a = (Z ** 3 + 2 * Z + 5)
    b = Z - I
    q, r = a.divmod(b)
    assert q * b + r == a and r.degree < b.degree
    assert ((Z - 1) * (Z + 2)).exact_div(Z - 1) == Z + 2
    with pytest.raises(ValueError):
        (Z ** 2 + 1).exact_div(Z - 1)


# -------------------------------------------------------------------- gcd


def test_gcd_examples():
    assert poly_gcd(Z ** 2 - 1, Z ** 2 - 2 * Z + 1) == Z - 1
    assert poly_gcd(Z, Z + 1) == 1
    assert poly_gcd((Z - 2) ** 3, Z - 2) == Z - 2


def test_gcd_of_two_zeros_is_an_error():
    with pytest.raises(UndefinedGcdError):
        poly_gcd(Polynomial(), Polynomial())
    assert poly_gcd(Polynomial(), 3 * Z + 3) == Z + 1


def test_gcd_scales_by_common_factor():
    rng = random.Random(3)
    for _ in range(100):
        a, b = nonzero_poly(rng, 5), nonzero_poly(rng, 5)
        g = nonzero_poly(rng, 3).monic()
        assert poly_gcd(a * g, b * g) == (g * poly_gcd(a, b)).monic()


def test_certificate_agrees_with_euclid():
    """The modular shortcut must never differ from the plain remainder sequence."""
    rng = random.Random(17)
    seen_certified = 0
    for _ in range(150):
        a = nonzero_poly(rng, 9)
        b = nonzero_poly(rng, 9)
        if rng.random() < 0.5:
            common = nonzero_poly(rng, 2)
            a, b = a * common, b * common
        if min(a.degree, b.degree) >= CERTIFICATE_MIN_DEGREE and coprime_certificate(a, b):
            seen_certified += 1
            assert euclid_gcd(a, b) == 1
        assert poly_gcd(a, b) == euclid_gcd(a, b)
    assert seen_certified > 0


def test_certificate_refuses_common_factor():
    a = (Z - Fraction(1, 3)) * (Z ** 6 + Z + 1)
    b = (Z - Fraction(1, 3)) * (Z ** 6 - 2 * Z + I)
    assert not coprime_certificate(a, b)
    assert poly_gcd(a, b) == Z - Fraction(1, 3)


# ------------------------------------------------------------- squarefree


def test_squarefree_examples():
    parts = squarefree_decompose((Z - 1) ** 2 * (Z - 2))
    assert set(parts) == {(Z - 1, 2), (Z - 2, 1)}
    assert squarefree_part((Z - 1) ** 2 * (Z - 2)).degree == 2
    assert squarefree_decompose(Z ** 3 - 1) == [(Z ** 3 - 1, 1)]
    assert squarefree_decompose(Z ** 2 * Z ** 2) == [(Z, 4)]


def test_squarefree_errors_and_constants():
    with pytest.raises(ZeroPolynomialError):
        squarefree_decompose(Polynomial())
    assert squarefree_decompose(Polynomial([5])) == []
    assert distinct_root_count(Polynomial([5])) == 0


def test_multiplicity_profile():
    parts = squarefree_decompose((Z - 1) ** 2 * (Z - 2) * (Z + 5) ** 2)
    assert multiplicity_profile(parts) == [(1, 1), (2, 2)]


def test_distinct_count_matches_planted_roots():
    rng = random.Random(8)
    for _ in range(200):
        p, count = poly_with_roots(rng, 8)
        assert distinct_root_count(p) == count


def test_distinct_count_matches_numeric_oracle():
    rng = random.Random(21)
    polys_ = [poly_with_roots(rng, 8)[0] for _ in range(100)] + [nonzero_poly(rng, 8) for _ in range(100)]
    for p in polys_:
        assert distinct_root_count(p) == numeric_distinct_roots(p)


# ------------------------------------------------------------- properties


@settings(max_examples=150, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * (b * c) == (a * b) * c
    assert a + b == b + a and a * b == b * a
    assert (a - b) + b == a


@settings(max_examples=150, deadline=None)
@given(polys, polys)
def test_derivative_linear_and_leibniz(a, b):
    assert (a + b).derivative() == a.derivative() + b.derivative()
    assert (a * b).derivative() == a.derivative() * b + a * b.derivative()


@settings(max_examples=100, deadline=None)
@given(polys.filter(lambda p: not p.is_zero()))
def test_squarefree_reconstruction(a):
    parts = squarefree_decompose(a)
    rebuilt = Polynomial([1])
    for f, m in parts:
        rebuilt = rebuilt * f ** m
    assert rebuilt.divides(a) and a.divides(rebuilt)
    s = squarefree_part(a)
    if s.degree >= 1:
        assert poly_gcd(s, s.derivative()) == 1
