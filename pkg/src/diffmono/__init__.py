"""Exact and numeric tools for differential monomials of rational and meromorphic functions."""

from .errors import DiffMonoError
from .exact import GaussianRational, Polynomial
from .monomial import MonomialSpec, profile
from .ratfunc import RationalFunction, build_monomial, deg_infinity

__all__ = [
    "DiffMonoError",
    "GaussianRational",
    "Polynomial",
    "MonomialSpec",
    "profile",
    "RationalFunction",
    "build_monomial",
    "deg_infinity",
]
__version__ = "0.1.0"
