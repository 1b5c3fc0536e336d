"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class CmcForgeError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(CmcForgeError, ValueError):
    """A constructor or operation received parameters outside their domain."""


class KindError(InvalidParameterError):
    """The operation does not apply to this Delaunay surface family."""


class OutOfIntervalError(CmcForgeError, ValueError):
    """A parameter lies outside the validity interval of a curve or generator."""


class DomainError(CmcForgeError, ArithmeticError):
    """A closed-form expression was evaluated outside its real domain."""


class DegenerateError(CmcForgeError, ValueError):
    """The requested object degenerates (e.g. a sphere of non-positive radius)."""


class QuadratureError(CmcForgeError, ArithmeticError):
    """Adaptive quadrature did not reach its tolerance within the subdivision budget."""


class VerticalTangentError(CmcForgeError, ArithmeticError):
    """The contact function is undefined because z'(s) vanishes."""


class BracketFailure(CmcForgeError, ArithmeticError):
    """A root search was started on an interval without a sign change."""


class NoRoot(CmcForgeError):
    """The contact function has no zero in the searched range."""


class ExistenceHypothesisFailed(CmcForgeError):
    """The unduloid existence test z(s0) >= z0 does not hold.

    Both compared values are kept so callers can report them.
    """

    def __init__(self, z_at_s0: float, z0: float):
        self.z_at_s0 = z_at_s0
        self.z0 = z0
        super().__init__(
            f"existence hypothesis z(s0) >= z0 fails: z(s0)={z_at_s0:.12g} < z0={z0:.12g}"
        )
