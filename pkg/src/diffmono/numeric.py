"""Floating-point probes: spherical derivatives, Marty grid scans, Zalcman rescaling."""

from __future__ import annotations

import math

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import DiffMonoError
from .exact import GaussianRational
from .expr import (
    NUMERIC,
    Add,
    Const,
    Expr,
    Mul,
    Num,
    Pow,
    Var,
    derivative,
    evaluate,
    from_rational_function,
    has_exp,
    has_param,
    parse,
    print_expr,
    substitute,
    to_rational_function,
)
from .monomial import MonomialSpec

DEFAULT_RADIUS = 0.5
DEFAULT_RESOLUTION = 101
DEFAULT_THRESHOLD = 10.0

# excluded-point marker returned by scalar probes
EXCLUDED = None


class UsageError(DiffMonoError):
    pass


@dataclass(frozen=True)
class NumericFunction:
    expression: Expr
    parameter_value: int | None = None

    @classmethod
    def parse(cls, text: str, m: int | None = None) -> "NumericFunction":
        return cls(parse(text, NUMERIC), m)

    @property
    def has_parameter(self) -> bool:
        return has_param(self.expression)

    def bind(self, m: int) -> "NumericFunction":
        return NumericFunction(self.expression, m)

    @cached_property
    def derivative_expression(self) -> Expr:
        return derivative(self.expression)

    def evaluate(self, z):
        return evaluate(self.expression, z, self.parameter_value)

    def __call__(self, z):
        value, excluded = self.evaluate(z)
        if np.ndim(value) == 0:
            return EXCLUDED if excluded else complex(value)
        return value

    def text(self) -> str:
        return print_expr(self.expression)

    def reciprocal(self) -> "NumericFunction | None":
        """1/F as a pole-free-at-poles tree, when F is rational once m is bound."""
        e = self.expression
        if has_exp(e):
            return None
        if self.parameter_value is not None:
            e = substitute(e, param=Const(GaussianRational(self.parameter_value)))
        elif has_param(e):
            return None
        try:
            f = to_rational_function(e)
        except DiffMonoError:
            return None
        if f.is_zero():
            return None
        inv = from_rational_function(1 / f)
        return NumericFunction(inv, self.parameter_value)


def _spherical(F: NumericFunction, z):
    fv, ex1 = evaluate(F.expression, z, F.parameter_value)
    dv, ex2 = evaluate(F.derivative_expression, z, F.parameter_value)
    with np.errstate(all="ignore"):
        value = np.abs(dv) / (1.0 + np.abs(fv) ** 2)
    excluded = ex1 | ex2 | ~np.isfinite(value)
    return np.where(excluded, np.nan, value), excluded


def spherical_derivative_grid(F: NumericFunction, z) -> np.ndarray:
    """|F'|/(1+|F|^2) on an array of points; NaN marks excluded points.

    At a detected pole of F the value is taken from 1/F, which has the same
    spherical derivative, whenever 1/F can be formed exactly.
    """
    z = np.asarray(z, dtype=complex)
    value, excluded = _spherical(F, z)
    if excluded.any():
        inv = F.reciprocal()
        if inv is not None:
            alt, alt_ex = _spherical(inv, z[excluded])
            filled = value.copy()
            filled[excluded] = np.where(alt_ex, np.nan, alt)
            value = filled
    return value


def spherical_derivative(F: NumericFunction, z: complex):
    """Scalar spherical derivative, or :data:`EXCLUDED` near an unresolvable pole."""
    v = spherical_derivative_grid(F, np.array([complex(z)]))[0]
    return EXCLUDED if np.isnan(v) else float(v)


def disk_grid(radius: float, resolution: int) -> tuple[np.ndarray, np.ndarray]:
    """Square grid circumscribing |z| <= radius and the mask of points inside the disk."""
    xs = np.linspace(-radius, radius, resolution)
    zz = xs[None, :] + 1j * xs[:, None]
    return zz, np.abs(zz) <= radius * (1 + 1e-12)


@dataclass
class MartyReport:
    family: str
    grid_radius: float
    grid_resolution: int
    threshold: float
    per_parameter: list[tuple[int, float, complex]]
    growth_ratio: float | None
    non_normal_flag: bool
    excluded_points: int = 0
    heatmap: list[str] = field(default_factory=list)
    last_grid: np.ndarray | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        out = {
            "family": self.family,
            "grid_radius": self.grid_radius,
            "grid_resolution": self.grid_resolution,
            "threshold": self.threshold,
            "per_parameter": [
                {"m": m, "max": None, "argmax": None} if math.isnan(v)
                else {"m": m, "max": v, "argmax": [a.real, a.imag]}
                for m, v, a in self.per_parameter
            ],
            "growth_ratio": self.growth_ratio,
            "non_normal_flag": self.non_normal_flag,
            "excluded_points": self.excluded_points,
        }
        if self.heatmap:
            out["heatmap"] = self.heatmap
        return out


_SHADES = " .:-=+*#%@"


def text_heatmap(values: np.ndarray, inside: np.ndarray) -> list[str]:
    """One character per grid point by magnitude decile; 'x' excluded, blank outside the disk."""
    finite = values[inside & np.isfinite(values)]
    if finite.size:
        edges = np.quantile(finite, np.linspace(0.1, 0.9, 9))
    else:
        edges = np.zeros(9)
    rows = []
    for r in range(values.shape[0] - 1, -1, -1):
        chars = []
        for c in range(values.shape[1]):
            if not inside[r, c]:
                chars.append(" ")
            elif not np.isfinite(values[r, c]):
                chars.append("x")
            else:
                chars.append(_SHADES[int(np.searchsorted(edges, values[r, c], side="right"))])
        rows.append("".join(chars))
    return rows


def marty_scan(
    family: NumericFunction,
    m_range: tuple[int, int],
    radius: float = DEFAULT_RADIUS,
    resolution: int = DEFAULT_RESOLUTION,
    threshold: float = DEFAULT_THRESHOLD,
    heatmap: bool = False,
) -> MartyReport:
    """Maximum spherical derivative over the disk for each family member m in ``m_range``.

    Unbounded growth in m on a compact set means the family is not normal.
    """
    if not family.has_parameter:
        raise UsageError("marty_scan needs a family with the free parameter m")
    if resolution < 3:
        raise UsageError("resolution must be at least 3")
    if radius <= 0:
        raise UsageError("radius must be positive")
    lo, hi = m_range
    if hi < lo:
        raise UsageError("empty m range")
    zz, inside = disk_grid(radius, resolution)
    pts = zz[inside]
    per = []
    excluded_total = 0
    grid = None
    for m in range(lo, hi + 1):
        vals = spherical_derivative_grid(family.bind(m), pts)
        excluded_total += int(np.isnan(vals).sum())
        if np.all(np.isnan(vals)):
            per.append((m, float("nan"), complex("nan")))
            continue
        j = int(np.nanargmax(vals))
        per.append((m, float(vals[j]), complex(pts[j])))
        if m == hi:
            grid = np.full(zz.shape, np.nan)
            grid[inside] = vals
    first, last = per[0][1], per[-1][1]
    if first > 0:
        ratio = last / first
        flag = ratio > threshold
    else:
        ratio = None
        flag = bool(last > 0)
    report = MartyReport(
        family=family.text(),
        grid_radius=radius,
        grid_resolution=resolution,
        threshold=threshold,
        per_parameter=per,
        growth_ratio=ratio,
        non_normal_flag=bool(flag),
        excluded_points=excluded_total,
        last_grid=grid,
    )
    if heatmap and grid is not None:
        report.heatmap = text_heatmap(grid, inside)
    return report


@dataclass(frozen=True)
class RescaleSpec:
    z0: complex | GaussianRational
    rho: float | Fraction
    alpha: float | Fraction

    def __post_init__(self):
        if not float(self.rho) > 0:
            raise ValueError("rho must be positive")


def _const_node(x) -> Expr:
    if isinstance(x, GaussianRational):
        return Const(x)
    if isinstance(x, (int, Fraction)):
        return Const(GaussianRational(x))
    return Num(complex(x))


def _is_integral(x) -> bool:
    return isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1)


def zalcman_rescale(F: NumericFunction, spec: RescaleSpec) -> NumericFunction:
    """zeta -> rho^alpha * F(z0 + rho*zeta), as a new tree."""
    rho, alpha = spec.rho, spec.alpha
    inner: Expr = Var()
    if rho != 1:
        inner = Mul(_const_node(rho), inner)
    if spec.z0 != 0:
        inner = Add(_const_node(spec.z0), inner)
    body = substitute(F.expression, var=inner)
    if _is_integral(alpha) and isinstance(rho, (int, Fraction)):
        scale = Const(GaussianRational(Fraction(rho) ** int(alpha)))
    else:
        scale = Num(complex(float(rho) ** float(alpha)))
    if not (isinstance(scale, Const) and scale.value == 1) and not (isinstance(scale, Num) and scale.value == 1):
        body = Mul(scale, body)
    return NumericFunction(body, F.parameter_value)


def monomial_expression(F: Expr, spec: MonomialSpec) -> Expr:
    """Tree for F^n (F^n1)^(t1) ... (F^nk)^(tk) with symbolic derivatives."""
    out: Expr | None = Pow(F, spec.n) if spec.n else None
    for nj, tj in spec.factors:
        factor = derivative(Pow(F, nj) if nj != 1 else F, tj)
        out = factor if out is None else Mul(out, factor)
    return out


def numeric_monomial_eval(F: NumericFunction, spec: MonomialSpec, z):
    """Value of M(F) at ``z``; :data:`EXCLUDED` at a detected pole (scalar input).

    Array input returns an array with NaN at excluded points.
    """
    tree = monomial_expression(F.expression, spec)
    value, excluded = evaluate(tree, z, F.parameter_value)
    if np.ndim(value) == 0:
        return EXCLUDED if excluded else complex(value)
    return value

