"""Exponent data of the differential monomial f^n (f^n1)^(t1) ... (f^nk)^(tk)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import HypothesisError
from .exact import GaussianRational


@dataclass(frozen=True)
class MonomialSpec:
    """``n`` plus the paired lists of powers ``exponents`` (n_j) and derivative ``orders`` (t_j)."""

    n: int
    exponents: tuple[int, ...]
    orders: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        object.__setattr__(self, "orders", tuple(int(t) for t in self.orders))
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if not self.exponents:
            raise ValueError("at least one factor (k >= 1) is required")
        if len(self.exponents) != len(self.orders):
            raise ValueError("exponents and orders must have equal length")
        if min(self.exponents) < 1 or min(self.orders) < 1:
            raise ValueError("exponents and derivative orders must be positive")

    @property
    def k(self) -> int:
        return len(self.exponents)

    @property
    def factors(self) -> list[tuple[int, int]]:
        return list(zip(self.exponents, self.orders))

    @classmethod
    def parse(cls, text: str) -> "MonomialSpec":
        """Read the ``n:n1,n2,...:t1,t2,...`` shell format."""
        parts = text.strip().split(":")
        if len(parts) != 3:
            raise ValueError(f"spec {text!r} is not of the form n:n1,..:t1,..")
        try:
            n = int(parts[0])
            ns = tuple(int(x) for x in parts[1].split(","))
            ts = tuple(int(x) for x in parts[2].split(","))
        except ValueError:
            raise ValueError(f"spec {text!r} contains a non-integer field") from None
        return cls(n, ns, ts)

    def __str__(self) -> str:
        return f"{self.n}:{','.join(map(str, self.exponents))}:{','.join(map(str, self.orders))}"

    def to_json(self) -> dict:
        return {"n": self.n, "exponents": list(self.exponents), "orders": list(self.orders)}


@dataclass(frozen=True)
class SpecProfile:
    lower_degree: int
    theta: int
    zalcman_alpha: Fraction
    condition_a: bool
    admissible_meromorphic: bool
    admissible_holomorphic: bool

    def to_json(self) -> dict:
        return {
            "lower_degree": self.lower_degree,
            "theta": self.theta,
            "zalcman_alpha": str(self.zalcman_alpha),
            "condition_a": self.condition_a,
            "admissible_meromorphic": self.admissible_meromorphic,
            "admissible_holomorphic": self.admissible_holomorphic,
        }


def profile(spec: MonomialSpec) -> SpecProfile:
    d = spec.n + sum(spec.exponents)
    theta = sum(spec.orders)
    cond_a = all(nj >= tj for nj, tj in spec.factors)
    return SpecProfile(
        lower_degree=d,
        theta=theta,
        zalcman_alpha=Fraction(-theta, d),
        condition_a=cond_a,
        admissible_meromorphic=cond_a and d >= 3 + theta,
        admissible_holomorphic=cond_a and d >= 2 + theta,
    )


@dataclass(frozen=True)
class ExpImage:
    """M(exp(c z + d)) = coefficient * exp(rate * z + offset_scale * d)."""

    coefficient: GaussianRational
    rate: GaussianRational
    offset_scale: int

    def to_json(self) -> dict:
        return {
            "coefficient": str(self.coefficient),
            "rate": str(self.rate),
            "offset_scale": self.offset_scale,
        }


def exp_image(spec: MonomialSpec, c, d_const=0) -> ExpImage:
    # d_const only enters through offset_scale; accepted for signature symmetry
    c = GaussianRational.coerce(c)
    GaussianRational.coerce(d_const)
    if not c:
        raise HypothesisError("exp_image needs c != 0 (exp(d) is constant)", reason="c-zero")
    total = spec.n + sum(spec.exponents)
    coefficient = GaussianRational(1)
    for nj, tj in spec.factors:
        coefficient = coefficient * (c * nj) ** tj
    return ExpImage(coefficient=coefficient, rate=c * total, offset_scale=total)
