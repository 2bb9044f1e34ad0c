import random

import numpy as np
import pytest

from diffmono.errors import ModeError, ParseError, UndefinedPowerError, ZeroDivisionAlgebraError
from diffmono.exact import GaussianRational, I, Polynomial, Z
from diffmono.expr import (
    EXACT,
    NUMERIC,
    Const,
    Div,
    Exp,
    Mul,
    Neg,
    Param,
    Pow,
    Var,
    derivative,
    evaluate,
    evaluate_scalar,
    from_rational_function,
    parse,
    parse_constant,
    parse_rational,
    print_expr,
    to_rational_function,
)
from diffmono.ratfunc import RationalFunction

from helpers import random_exact_tree, random_tree

ONE = Polynomial([1])


def rf(num, den=ONE):
    return RationalFunction(num, den)


# ------------------------------------------------------------------ parsing


def test_parse_rational_example():
    assert parse_rational("(z^2+1)/z") == rf(Z ** 2 + 1, Z)


def test_parse_numeric_family():
    assert parse("exp(m*z)", NUMERIC) == Exp(Mul(Param(), Var()))


def test_parse_constant_example():
    from fractions import Fraction

    assert parse_constant("1/2 + 3/4*i") == GaussianRational(Fraction(1, 2), Fraction(3, 4))


@pytest.mark.parametrize("text,expected", [
    ("z^(-1)", rf(ONE, Z)),
    ("z^-2", rf(ONE, Z ** 2)),
    ("(z+1)*(z-1)", rf(Z ** 2 - 1)),
    ("z/z", rf(ONE)),
    ("-z^2", rf(-(Z ** 2))),
    ("2*-z", rf(-2 * Z)),
    ("i*i", rf(Polynomial([-1]))),
    ("3/2^2", rf(Polynomial([GaussianRational(3) / 4]))),
])
def test_to_rational_function(text, expected):
    assert parse_rational(text) == expected


def test_unary_minus_binds_below_power():
    assert parse("-z^2") == Neg(Pow(Var(), 2))


def test_negative_exponent_rewrite():
    assert parse("z^(-3)") == Div(Const(GaussianRational(1)), Pow(Var(), 3))


@pytest.mark.parametrize("text,offset", [
    ("z^2^3", 3),
    ("1.5*z", 1),
    ("z + ", 4),
    ("(z+1", 4),
    ("z $ 1", 2),
    ("2z", 1),
    ("sin(z)", 0),
    ("z/0", 1),
    ("z^", 2),
    ("", 0),
])
def test_syntax_errors_carry_offsets(text, offset):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert err.value.position == offset
    assert f"offset {offset}" in str(err.value)


@pytest.mark.parametrize("text,offset", [("exp(z)", 0), ("m*z", 0), ("z + m", 4)])
def test_exact_mode_rejects_numeric_constructs(text, offset):
    with pytest.raises(ModeError) as err:
        parse(text, EXACT)
    assert err.value.position == offset


def test_division_by_zero_function():
    with pytest.raises(ZeroDivisionAlgebraError):
        parse_rational("1/(z-z)")


def test_zero_to_the_zero():
    with pytest.raises(UndefinedPowerError):
        parse_rational("(z-z)^0")


def test_parser_never_raises_anything_else():
    rng = random.Random(0)
    alphabet = "z i m 0 1 2 / * + - ^ ( ) exp . x"
    pieces = alphabet.split()
    for _ in range(2000):
        text = "".join(rng.choice(pieces) for _ in range(rng.randint(0, 10)))
        for mode in (EXACT, NUMERIC):
            try:
                parse(text, mode)
            except ParseError as exc:
                assert 0 <= exc.position <= len(text)


# ------------------------------------------------------------- round trips


@pytest.mark.parametrize("text,mode", [
    ("(z^2+1)/z", EXACT),
    ("exp(m*z)", NUMERIC),
    ("-z^2", EXACT),
    ("z - (z - 1)", EXACT),
    ("z/(2*z)", EXACT),
    ("(-z)^2", EXACT),
    ("1/2/z", EXACT),
])
def test_round_trip_identical(text, mode):
    e = parse(text, mode)
    assert parse(print_expr(e), mode) == e


def test_round_trip_random_exact_trees():
    rng = random.Random(1)
    for _ in range(500):
        e, value = random_exact_tree(rng)
        assert to_rational_function(parse(print_expr(e))) == value


def test_round_trip_random_numeric_trees():
    rng = random.Random(2)
    done = 0
    while done < 200:
        e = random_tree(rng, 3, numeric=True)
        zs = np.array([complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(10)])
        try:
            v1, x1 = evaluate(e, zs, 2)
        except UndefinedPowerError:
            continue
        done += 1
        v2, x2 = evaluate(parse(print_expr(e), NUMERIC), zs, 2)
        keep = ~(x1 | x2)
        np.testing.assert_allclose(v2[keep], v1[keep], rtol=1e-12, atol=1e-12)


def test_from_rational_function_round_trip():
    rng = random.Random(3)
    for _ in range(100):
        _, value = random_exact_tree(rng)
        assert to_rational_function(from_rational_function(value)) == value
        assert parse_rational(print_expr(from_rational_function(value))) == value


# ------------------------------------------------------- symbolic derivative


def test_derivative_matches_exact_derivative():
    rng = random.Random(4)
    from diffmono.ratfunc import rf_derivative

    for _ in range(100):
        e, value = random_exact_tree(rng, 3)
        if value.is_constant():
            continue
        assert to_rational_function(derivative(e)) == rf_derivative(value)


def test_derivative_of_exp():
    e = parse("exp(m*z)", NUMERIC)
    assert abs(evaluate_scalar(derivative(e), 0.3, 4) - 4 * np.exp(1.2)) < 1e-12
    assert abs(evaluate_scalar(derivative(e, 2), 0.3, 4) - 16 * np.exp(1.2)) < 1e-10


# --------------------------------------------------------------- evaluation


def test_evaluate_marks_poles():
    value, excluded = evaluate(parse("1/z"), np.array([0j, 1 + 0j, 2j]))
    assert excluded.tolist() == [True, False, False]
    assert np.isnan(value[0]) and value[1] == 1 and value[2] == -0.5j


def test_evaluate_constant_i():
    assert evaluate_scalar(parse("i*z"), 2) == 2j
    assert complex(I) == 1j
