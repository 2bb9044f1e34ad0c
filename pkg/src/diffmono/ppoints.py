"""Counting p-points of M(f), IM value sharing, and the degree lemmas.

All counts are over the finite plane; a p-point at infinity never shows up.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .errors import HypothesisError, InfinitePPointsError
from .exact import (
    GaussianRational,
    Polynomial,
    format_polynomial,
    squarefree_decompose,
    squarefree_part,
)
from .monomial import MonomialSpec, profile
from .ratfunc import RationalFunction, build_monomial, deg_infinity, format_rf, rf_derivative

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ZeroReport:
    target_description: str
    distinct_count: int
    multiplicity_profile: list[tuple[int, int]]
    numerator_degree: int

    def to_json(self) -> dict:
        return {
            "target_description": self.target_description,
            "distinct_count": self.distinct_count,
            "multiplicity_profile": [list(p) for p in self.multiplicity_profile],
            "numerator_degree": self.numerator_degree,
        }


@dataclass(frozen=True)
class FactorProfile:
    s: int
    t: int
    zero_multiplicities: list[int]
    pole_multiplicities: list[int]
    M_big: int
    N_big: int
    M_i: list[int]
    N_i: list[int]

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "t": self.t,
            "zero_multiplicities": self.zero_multiplicities,
            "pole_multiplicities": self.pole_multiplicities,
            "M_big": self.M_big,
            "N_big": self.N_big,
            "M_i": self.M_i,
            "N_i": self.N_i,
        }


@dataclass(frozen=True)
class ShareVerdict:
    shared: bool
    zero_set_left: Polynomial = field(repr=False)
    zero_set_right: Polynomial = field(repr=False)

    def to_json(self) -> dict:
        return {
            "shared": self.shared,
            "zero_set_left": format_polynomial(self.zero_set_left),
            "zero_set_right": format_polynomial(self.zero_set_right),
        }


def _as_target(target) -> Polynomial:
    if isinstance(target, Polynomial):
        return target
    if isinstance(target, RationalFunction):
        if not target.is_polynomial():
            raise ValueError("p-point targets must be polynomials")
        return target.num
    return Polynomial.constant(GaussianRational.coerce(target))


def _require_nonconstant(f: RationalFunction, name: str = "f") -> None:
    if f.is_constant():
        raise HypothesisError(f"{name} must be non-constant", reason="constant-f")


def ppoint_numerator(f: RationalFunction, spec: MonomialSpec, target) -> Polynomial:
    """``num(M) - target*den(M)``; its roots are exactly the finite target-points of M(f)."""
    _require_nonconstant(f)
    target = _as_target(target)
    m = build_monomial(f, spec)
    n_t = m.num - target * m.den
    if n_t.is_zero():
        raise InfinitePPointsError(f"M(f) is identically {format_polynomial(target)}")
    return n_t


def distinct_ppoints(f: RationalFunction, spec: MonomialSpec, target) -> ZeroReport:
    target = _as_target(target)
    n_t = ppoint_numerator(f, spec, target)
    profile_ = [(m, fac.degree) for fac, m in squarefree_decompose(n_t)]
    return ZeroReport(
        target_description=format_polynomial(target),
        distinct_count=sum(c for _, c in profile_),
        multiplicity_profile=profile_,
        numerator_degree=n_t.degree,
    )


def check_lemma4_hypotheses(f: RationalFunction, spec: MonomialSpec, p) -> GaussianRational:
    p = GaussianRational.coerce(p)
    if not profile(spec).admissible_meromorphic:
        raise HypothesisError(f"spec {spec} violates condition (a) or (b)", reason="inadmissible-spec")
    if not p:
        raise HypothesisError("the value p must be nonzero", reason="p-zero")
    _require_nonconstant(f)
    return p


def lemma4_verdict(f: RationalFunction, spec: MonomialSpec, p) -> bool:
    """True iff M(f) takes the nonzero value ``p`` at two or more distinct points."""
    p = check_lemma4_hypotheses(f, spec, p)
    report = distinct_ppoints(f, spec, p)
    ok = report.distinct_count >= 2
    if not ok:
        log.warning(
            "lemma 4 counterexample: f=%s spec=%s p=%s distinct_count=%d",
            format_rf(f), spec, p, report.distinct_count,
        )
    return ok


def shares_value(f: RationalFunction, g: RationalFunction, spec: MonomialSpec, target) -> ShareVerdict:
    _require_nonconstant(f, "f")
    _require_nonconstant(g, "g")
    left = squarefree_part(ppoint_numerator(f, spec, target))
    right = squarefree_part(ppoint_numerator(g, spec, target))
    return ShareVerdict(shared=left == right, zero_set_left=left, zero_set_right=right)


def degree_drop_check(R: RationalFunction, k: int) -> bool:
    if R.den.degree < 1:
        raise HypothesisError("the denominator must be non-constant", reason="constant-denominator")
    return deg_infinity(rf_derivative(R, k)) <= deg_infinity(R) - k


def polynomial_part(R: RationalFunction) -> tuple[Polynomial, Polynomial]:
    """Split ``R`` into (polynomial part, numerator of the proper remainder over den(R))."""
    return R.num.divmod(R.den)


def degree_drop_equality_check(R: RationalFunction, k: int) -> bool:
    q, _ = polynomial_part(R)
    m = q.degree
    if m < 1:
        raise HypothesisError("R needs a non-constant polynomial part", reason="no-polynomial-part")
    if k > m:
        raise HypothesisError(f"k={k} exceeds the polynomial-part degree {m}", reason="k-too-large")
    return deg_infinity(rf_derivative(R, k)) == deg_infinity(R) - k


def _root_multiplicities(p: Polynomial) -> list[int]:
    mults = []
    for fac, m in squarefree_decompose(p):
        mults.extend([m] * fac.degree)
    return sorted(mults)


def factor_profile(f: RationalFunction, spec: MonomialSpec) -> FactorProfile:
    _require_nonconstant(f)
    zeros = _root_multiplicities(f.num)
    poles = _root_multiplicities(f.den)
    sz, sp = sum(zeros), sum(poles)
    return FactorProfile(
        s=len(zeros),
        t=len(poles),
        zero_multiplicities=zeros,
        pole_multiplicities=poles,
        M_big=spec.n * sz,
        N_big=spec.n * sp,
        M_i=[nj * sz for nj in spec.exponents],
        N_i=[nj * sp for nj in spec.exponents],
    )
