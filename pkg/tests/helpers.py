"""Random instances shared by the test modules."""

from __future__ import annotations

import random

from diffmono.errors import DiffMonoError
from diffmono.exact import GaussianRational, Polynomial
from diffmono.expr import Add, Const, Div, Exp, Mul, Neg, Param, Pow, Sub, Var, to_rational_function
from diffmono.generators import gen_gaussian_rational


def random_poly(rng: random.Random, max_degree: int = 4, height: int = 5) -> Polynomial:
    deg = rng.randint(-1, max_degree)
    return Polynomial([gen_gaussian_rational(rng, height, nonzero=False) for _ in range(deg + 1)])


def nonzero_poly(rng: random.Random, max_degree: int = 4, height: int = 5) -> Polynomial:
    while True:
        p = random_poly(rng, max_degree, height)
        if not p.is_zero():
            return p


def poly_with_roots(rng: random.Random, max_degree: int, height: int = 3) -> tuple[Polynomial, int]:
    """Polynomial with repeated Gaussian-rational roots, plus its true distinct-root count."""
    deg = rng.randint(1, max_degree)
    roots: list[GaussianRational] = []
    while len(roots) < deg:
        r = gen_gaussian_rational(rng, height, nonzero=False)
        roots += [r] * rng.randint(1, deg - len(roots))
    lead = GaussianRational(rng.randint(1, 5), rng.randint(-5, 5))
    return Polynomial.from_roots(roots, leading=lead), len(set(roots))


def _leaf(rng: random.Random, numeric: bool):
    r = rng.random()
    if r < 0.45:
        return Var()
    if numeric and r < 0.6:
        return Param()
    return Const(gen_gaussian_rational(rng, 4, nonzero=False))


def random_tree(rng: random.Random, depth: int = 4, numeric: bool = False):
    if depth == 0 or rng.random() < 0.25:
        return _leaf(rng, numeric)
    kinds = ["neg", "add", "sub", "mul", "div", "pow"] + (["exp"] if numeric else [])
    kind = rng.choice(kinds)
    sub = lambda: random_tree(rng, depth - 1, numeric)  # noqa: E731
    if kind == "neg":
        return Neg(sub())
    if kind == "pow":
        return Pow(sub(), rng.randint(-2, 3))
    if kind == "exp":
        # keep the argument small so the values stay comparable in floating point
        return Exp(Mul(Const(GaussianRational(1, 0) / 4), random_tree(rng, min(depth - 1, 1), numeric)))
    left, right = sub(), sub()
    return {"add": Add, "sub": Sub, "mul": Mul, "div": Div}[kind](left, right)


def random_exact_tree(rng: random.Random, depth: int = 4):
    """Exact-mode tree whose rational function is defined (no division by zero, no 0^0)."""
    while True:
        e = random_tree(rng, depth)
        try:
            return e, to_rational_function(e)
        except (DiffMonoError, ZeroDivisionError):
            continue
