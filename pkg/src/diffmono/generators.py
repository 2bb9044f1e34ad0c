"""Seeded random instances for the verification campaigns.

Every generator takes a ``random.Random`` so a trial is fully determined by
its seed.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from fractions import Fraction

from .exact import GaussianRational, Polynomial
from .monomial import MonomialSpec, profile
from .ratfunc import RationalFunction

MAX_ATTEMPTS = 1000
POLYNOMIAL_PROBABILITY = 0.25


class GenerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class CampaignConfig:
    seed: int = 0
    trials: int = 1000
    max_poly_degree: int = 4
    max_k: int = 3
    max_exponent: int = 4
    coefficient_height: int = 5

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        for name in ("trials", "max_poly_degree", "max_k", "max_exponent", "coefficient_height"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")

    def to_json(self) -> dict:
        return asdict(self)


def trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(seed ^ trial)


def gen_gaussian_integer(rng: random.Random, height: int, nonzero: bool = False) -> GaussianRational:
    while True:
        c = GaussianRational(rng.randint(-height, height), rng.randint(-height, height))
        if c or not nonzero:
            return c


def gen_gaussian_rational(rng: random.Random, height: int, nonzero: bool = True) -> GaussianRational:
    """Parts ``a/b`` with ``|a| <= height`` and ``1 <= b <= height``."""
    while True:
        re = Fraction(rng.randint(-height, height), rng.randint(1, height))
        im = Fraction(rng.randint(-height, height), rng.randint(1, height))
        c = GaussianRational(re, im)
        if c or not nonzero:
            return c


def gen_poly(rng: random.Random, degree: int, height: int) -> Polynomial:
    """Polynomial of exactly ``degree`` with Gaussian-integer coefficients."""
    coeffs = [gen_gaussian_integer(rng, height) for _ in range(degree)]
    coeffs.append(gen_gaussian_integer(rng, height, nonzero=True))
    return Polynomial(coeffs)


def gen_ratfunc(rng: random.Random, config: CampaignConfig, require_pole: bool = False) -> RationalFunction:
    d, h = config.max_poly_degree, config.coefficient_height
    for _ in range(MAX_ATTEMPTS):
        num = gen_poly(rng, rng.randint(0, d), h)
        if not require_pole and rng.random() < POLYNOMIAL_PROBABILITY:
            den = Polynomial([1])
        else:
            den = gen_poly(rng, rng.randint(1, d), h)
        f = RationalFunction(num, den)
        if f.is_constant():
            continue
        if require_pole and f.den.degree < 1:
            continue
        return f
    raise GenerationError("no non-constant rational function after bounded resampling")


def gen_spec(rng: random.Random, config: CampaignConfig, mode: str = "meromorphic") -> MonomialSpec:
    """Random spec satisfying condition (a) and the mode's bound on n + sum(n_j).

    ``mode="violating"`` keeps (a) but breaks (b); used for negative controls.
    """
    if mode not in ("meromorphic", "holomorphic", "violating"):
        raise ValueError(f"unknown spec mode {mode!r}")
    e = config.max_exponent
    for _ in range(MAX_ATTEMPTS):
        k = rng.randint(1, config.max_k)
        ns, ts = [], []
        for _ in range(k):
            nj = rng.randint(1, e)
            ns.append(nj)
            ts.append(rng.randint(1, nj))
        spec = MonomialSpec(rng.randint(0, e), tuple(ns), tuple(ts))
        prof = profile(spec)
        if mode == "meromorphic" and prof.admissible_meromorphic:
            return spec
        if mode == "holomorphic" and prof.admissible_holomorphic:
            return spec
        if mode == "violating" and not prof.admissible_meromorphic:
            return spec
    raise GenerationError(f"no {mode} spec within the configured bounds")


def gen_proper_plus_polynomial(rng: random.Random, config: CampaignConfig) -> RationalFunction:
    """``poly(m >= 1) + P/B`` with ``deg P < deg B`` (P may be zero)."""
    d, h = config.max_poly_degree, config.coefficient_height
    poly = gen_poly(rng, rng.randint(1, d), h)
    b = gen_poly(rng, rng.randint(1, d), h)
    p_deg = rng.randint(-1, b.degree - 1)
    p = gen_poly(rng, p_deg, h) if p_deg >= 0 else Polynomial()
    return RationalFunction(poly * b + p, b)
