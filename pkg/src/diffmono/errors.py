"""Exception hierarchy shared by the algebra, analysis and CLI layers."""

from __future__ import annotations


class DiffMonoError(Exception):
    """Base class for every error raised by the package."""


class UndefinedGcdError(DiffMonoError):
    pass


class ZeroPolynomialError(DiffMonoError):
    pass


class ZeroDivisionAlgebraError(DiffMonoError, ZeroDivisionError):
    pass


class UndefinedPowerError(DiffMonoError):
    """Raised for 0^0."""


class HypothesisError(DiffMonoError):
    """A lemma hypothesis or operation precondition does not hold.

    ``reason`` is a short machine-readable tag (``"inadmissible-spec"``,
    ``"p-zero"``, ``"constant-f"`` ...) so callers can tell violations apart.
    """

    def __init__(self, message: str, reason: str = "precondition"):
        super().__init__(message)
        self.reason = reason


class InfinitePPointsError(DiffMonoError):
    """The target coincides with M(f) identically."""


class ParseError(DiffMonoError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class ModeError(ParseError):
    """Construct not allowed in the requested parse mode."""
