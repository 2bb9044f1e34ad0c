import random
from fractions import Fraction
from math import prod

import pytest

from diffmono.errors import HypothesisError, UndefinedPowerError, ZeroDivisionAlgebraError
from diffmono.exact import GaussianRational, Polynomial, Z
from diffmono.generators import CampaignConfig, gen_gaussian_rational, gen_ratfunc, gen_spec
from diffmono.monomial import MonomialSpec
from diffmono.ratfunc import (
    RationalFunction,
    build_monomial,
    deg_infinity,
    format_rf,
    rf_arith,
    rf_derivative,
    rf_eval,
    rf_normalize,
    rf_pow,
)

from helpers import nonzero_poly

ONE = Polynomial([1])
zf = RationalFunction(Z)
inv_z = RationalFunction(ONE, Z)


def rf(num, den=ONE):
    return RationalFunction(num, den)


def naive_derivative(f: RationalFunction, k: int) -> RationalFunction:
    for _ in range(k):
        f = rf_normalize(f.num.derivative() * f.den - f.num * f.den.derivative(), f.den * f.den)
    return f


# ---------------------------------------------------------------- normalize


def test_normalize_examples():
    assert rf_normalize(Z ** 2 - 1, Z - 1) == rf(Z + 1)
    f = rf_normalize(2 * Z, Polynomial([2]))
    assert f.num == Z and f.den == ONE
    assert rf_normalize(Z, Z) == rf(ONE)


def test_normalize_makes_denominator_monic():
    f = rf_normalize(Z + 1, 2 * Z - 4)
    assert f.den == Z - 2 and f.num == (Z + 1).scale(Fraction(1, 2))


def test_normalize_zero_denominator():
    with pytest.raises(ZeroDivisionAlgebraError):
        rf_normalize(Z, Polynomial())


def test_normalize_idempotent():
    rng = random.Random(4)
    for _ in range(200):
        f = rf_normalize(nonzero_poly(rng), nonzero_poly(rng))
        g = rf_normalize(f.num, f.den)
        assert g.num == f.num and g.den == f.den


# --------------------------------------------------------------- arithmetic


def test_arith_examples():
    assert rf_arith(inv_z, inv_z, "mul") == rf(ONE, Z ** 2)
    f = rf(Z ** 2 + 1, Z - 3)
    assert rf_arith(f, f, "sub").is_zero()
    assert rf_arith(inv_z, inv_z, "add") == rf(Polynomial([2]), Z)
    assert rf_arith(f, f, "div") == rf(ONE)


def test_division_by_zero_function():
    with pytest.raises(ZeroDivisionAlgebraError):
        rf_arith(zf, rf(Polynomial()), "div")


def test_pow_examples():
    assert rf_pow(inv_z, 3) == rf(ONE, Z ** 3)
    assert rf_pow(rf(Z + 5, Z), 0) == rf(ONE)
    assert rf_pow(rf(Z, Z + 1), 2) == rf(Z ** 2, Z ** 2 + 2 * Z + 1)
    with pytest.raises(UndefinedPowerError):
        rf_pow(rf(Polynomial()), 0)


def test_field_axioms_random():
    rng = random.Random(12)
    for _ in range(100):
        a, b, c = (rf(nonzero_poly(rng, 3), nonzero_poly(rng, 3)) for _ in range(3))
        assert (a + b) * c == a * c + b * c
        assert (a / b) * b == a
        assert a - a == rf(Polynomial())


# --------------------------------------------------------------- derivative


def test_derivative_examples():
    assert rf_derivative(inv_z, 1) == rf(Polynomial([-1]), Z ** 2)
    assert rf_derivative(rf(Z ** 4), 2) == rf(12 * Z ** 2)
    assert rf_derivative(inv_z, 2) == rf(Polynomial([2]), Z ** 3)


def test_fast_derivative_matches_quotient_rule():
    rng = random.Random(5)
    cfg = CampaignConfig(max_poly_degree=5)
    for _ in range(150):
        f = gen_ratfunc(rng, cfg)
        for k in (1, 2, 3):
            fast, slow = rf_derivative(f, k), naive_derivative(f, k)
            assert fast.num == slow.num and fast.den == slow.den


def test_derivative_leibniz():
    rng = random.Random(6)
    for _ in range(100):
        f = rf(nonzero_poly(rng, 3), nonzero_poly(rng, 3))
        g = rf(nonzero_poly(rng, 3), nonzero_poly(rng, 3))
        assert rf_derivative(f * g) == rf_derivative(f) * g + f * rf_derivative(g)


def test_degree_drop_inequality():
    rng = random.Random(7)
    cfg = CampaignConfig()
    checked = 0
    while checked < 1000:
        f = gen_ratfunc(rng, cfg, require_pole=True)
        k = rng.randint(1, 3)
        d = rf_derivative(f, k)
        if d.is_zero():
            continue
        assert deg_infinity(d) <= deg_infinity(f) - k
        checked += 1


# ------------------------------------------------------------- degree at inf


def test_deg_infinity_examples():
    assert deg_infinity(rf(Z ** 2 + 1, Z)) == 1
    assert deg_infinity(inv_z) == -1
    assert deg_infinity(rf(Polynomial([5]))) == 0
    with pytest.raises(HypothesisError):
        deg_infinity(rf(Polynomial()))


# ------------------------------------------------------------ build_monomial


def test_build_monomial_examples():
    assert build_monomial(zf, MonomialSpec(0, (4,), (1,))) == rf(4 * Z ** 3)
    assert build_monomial(inv_z, MonomialSpec(3, (1,), (1,))) == rf(Polynomial([-1]), Z ** 5)
    assert build_monomial(zf, MonomialSpec(1, (2,), (2,))) == rf(2 * Z)


def test_build_monomial_pure_power_closed_form():
    rng = random.Random(9)
    cfg = CampaignConfig(max_exponent=4, max_k=3)
    for _ in range(150):
        a = rng.randint(1, 4)
        spec = gen_spec(rng, cfg, "meromorphic")
        if any(a * nj < tj for nj, tj in spec.factors):
            continue
        coeff = prod(prod(a * nj - r for r in range(tj)) for nj, tj in spec.factors)
        power = a * (spec.n + sum(spec.exponents)) - sum(spec.orders)
        expected = rf(Polynomial.monomial(power, coeff))
        assert build_monomial(rf(Z ** a), spec) == expected


def test_build_monomial_matches_generic_product():
    rng = random.Random(10)
    cfg = CampaignConfig(max_poly_degree=3, max_exponent=3, max_k=2)
    for _ in range(60):
        f, spec = gen_ratfunc(rng, cfg), gen_spec(rng, cfg)
        generic = rf_pow(f, spec.n)
        for nj, tj in spec.factors:
            generic = generic * rf_derivative(rf_pow(f, nj), tj)
        assert build_monomial(f, spec) == generic


def test_build_monomial_commutes_with_evaluation():
    rng = random.Random(11)
    cfg = CampaignConfig(max_poly_degree=3, max_exponent=3, max_k=2)
    for _ in range(20):
        f, spec = gen_ratfunc(rng, cfg), gen_spec(rng, cfg)
        m = build_monomial(f, spec)
        factors = [rf_derivative(rf_pow(f, nj), tj) for nj, tj in spec.factors]
        done = 0
        while done < 20:
            z = gen_gaussian_rational(rng, 6, nonzero=False)
            if f.den(z) == 0:
                continue
            value = rf_eval(f, z) ** spec.n
            for g in factors:
                value = value * rf_eval(g, z)
            assert rf_eval(m, z) == value
            done += 1


def test_format_rf():
    assert format_rf(rf(Z ** 2 + 1, Z)) == "(z^2 + 1)/(z)"
    assert format_rf(rf(Z - 1)) == "z - 1"


def test_eval_at_pole_is_an_error():
    with pytest.raises(ZeroDivisionAlgebraError):
        rf_eval(inv_z, GaussianRational(0))
