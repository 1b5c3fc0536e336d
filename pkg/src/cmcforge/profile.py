"""Generating curves of rotational CMC surfaces.

Delaunay profiles use Kenmotsu's closed form

    x(s) = (1/H) sqrt(1 + B^2 + 2B sin(Hs + 3pi/2))
    z(s) = integral of z'(t) from 0 to s

with ``H > 0`` the Kenmotsu parameter (equal to ``k1 + k2`` of the rotated
surface) and ``B >= 0, B != 1``. Internally the phase shift is folded away:
``sin(Hs + 3pi/2) = -cos(Hs)`` and ``cos(Hs + 3pi/2) = sin(Hs)``, which keeps
``x'(0) = 0`` and the parity identities exact in floating point.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional

import numpy as np

from .errors import DomainError, InvalidParameterError, KindError, OutOfIntervalError
from .quadrature import integrate


class DelaunayKind(enum.Enum):
    CYLINDER = "cylinder"
    UNDULOID = "unduloid"
    NODOID = "nodoid"


@dataclass(frozen=True)
class DelaunayParams:
    """Kenmotsu parameter pair.

    ``B`` is the dimensionless amplitude and ``H`` the curvature parameter
    (1/length). ``B == 1`` is rejected here rather than at evaluation.
    """

    B: float
    H: float

    def __post_init__(self):
        B, H = float(self.B), float(self.H)
        if not math.isfinite(B) or B < 0:
            raise InvalidParameterError(f"B must be finite and >= 0, got {self.B}")
        if B == 1.0:
            raise InvalidParameterError("B = 1 is excluded")
        if not math.isfinite(H) or H <= 0:
            raise InvalidParameterError(f"H must be finite and > 0, got {self.H}")
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "H", H)

    @property
    def kind(self) -> DelaunayKind:
        return classify(self)


@dataclass(frozen=True)
class QuadratureConfig:
    tol: float = 1e-10
    max_subdivisions: int = 10_000

    def __post_init__(self):
        if not self.tol > 0:
            raise InvalidParameterError(f"quadrature tolerance must be > 0, got {self.tol}")
        if self.max_subdivisions < 1:
            raise InvalidParameterError(
                f"max_subdivisions must be >= 1, got {self.max_subdivisions}"
            )


class CurvePoint(NamedTuple):
    x: float
    z: float
    xp: float
    zp: float
    xpp: float
    zpp: float


@dataclass(frozen=True)
class ProfileCurve:
    """Arc-length plane curve ``s -> (x(s), z(s))`` with two derivative orders.

    ``tag`` is one of ``"delaunay"``, ``"catenoid"`` or ``"custom"``.
    """

    x: Callable[[float], float]
    z: Callable[[float], float]
    xp: Callable[[float], float]
    zp: Callable[[float], float]
    xpp: Callable[[float], float]
    zpp: Callable[[float], float]
    s_min: float = -math.inf
    s_max: float = math.inf
    tag: str = "custom"
    params: Optional[DelaunayParams] = field(default=None, compare=False)

    def check(self, s: float) -> float:
        s = float(s)
        if not (self.s_min <= s <= self.s_max):
            raise OutOfIntervalError(
                f"s={s!r} outside curve interval [{self.s_min!r}, {self.s_max!r}]"
            )
        return s

    def point(self, s: float) -> CurvePoint:
        s = self.check(s)
        return CurvePoint(
            self.x(s), self.z(s), self.xp(s), self.zp(s), self.xpp(s), self.zpp(s)
        )


def classify(p: DelaunayParams) -> DelaunayKind:
    if p.B == 1.0:
        raise KindError("B = 1 is excluded")
    if p.B == 0.0:
        return DelaunayKind.CYLINDER
    if p.B < 1.0:
        return DelaunayKind.UNDULOID
    return DelaunayKind.NODOID


def _radicand(s: float, B: float, H: float) -> float:
    # 1 + B^2 - 2B cos(Hs), written without cancellation near B = 1
    half = math.sin(0.5 * H * s)
    q = (1.0 - B) ** 2 + 4.0 * B * half * half
    if q <= 0.0:
        raise DomainError(f"Kenmotsu radicand is {q!r} at s={s!r}")
    return q


def delaunay_x(s: float, p: DelaunayParams) -> float:
    return math.sqrt(_radicand(s, p.B, p.H)) / p.H


def delaunay_derivatives(s: float, p: DelaunayParams) -> tuple[float, float, float, float]:
    """Return ``(x', z', x'', z'')`` at ``s`` from the closed forms."""
    B, H = p.B, p.H
    q = _radicand(s, B, H)
    root = math.sqrt(q)
    c = math.cos(H * s)
    sn = math.sin(H * s)
    xp = B * sn / root
    zp = (1.0 - B * c) / root
    q32 = q * root
    xpp = B * H * (c - B) * (1.0 - B * c) / q32
    zpp = H * B * B * sn * (B - c) / q32
    return xp, zp, xpp, zpp


def _z_integrand(p: DelaunayParams) -> Callable[[np.ndarray], np.ndarray]:
    B, H = p.B, p.H

    def integrand(t: np.ndarray) -> np.ndarray:
        half = np.sin(0.5 * H * t)
        q = (1.0 - B) ** 2 + 4.0 * B * half * half
        return (1.0 - B * np.cos(H * t)) / np.sqrt(q)

    return integrand


def delaunay_z(s: float, p: DelaunayParams, q: QuadratureConfig = QuadratureConfig()) -> float:
    """Height of the Delaunay profile, by adaptive quadrature of z'.

    The integrand is even, so ``z(-s) = -z(s)`` holds exactly: negative
    ``s`` is integrated over ``[0, |s|]`` and negated.
    """
    s = float(s)
    if s == 0.0:
        return 0.0
    if p.B == 0.0:
        return s
    value = integrate(_z_integrand(p), 0.0, abs(s), q.tol, q.max_subdivisions)
    return value if s > 0.0 else -value


def first_inflection_s0(p: DelaunayParams) -> float:
    """Smallest positive zero of x'' on an unduloid."""
    if classify(p) is not DelaunayKind.UNDULOID:
        raise KindError(f"s0 is defined for unduloids (0 < B < 1), got B={p.B}")
    return math.asin(-p.B) / p.H + math.pi / (2.0 * p.H)


def first_vertical_r0(p: DelaunayParams) -> float:
    """Smallest positive zero of z' on a nodoid; 1/B is used unrounded."""
    if classify(p) is not DelaunayKind.NODOID:
        raise KindError(f"r0 is defined for nodoids (B > 1), got B={p.B}")
    return math.asin(-1.0 / p.B) / p.H + math.pi / (2.0 * p.H)


def unduloid_threshold_z0(p: DelaunayParams) -> float:
    if classify(p) is not DelaunayKind.UNDULOID:
        raise KindError(f"z0 is defined for unduloids (0 < B < 1), got B={p.B}")
    return (1.0 - p.B * p.B) / (p.H * p.B)


def delaunay_curve(p: DelaunayParams, q: QuadratureConfig = QuadratureConfig()) -> ProfileCurve:
    return ProfileCurve(
        x=lambda s: delaunay_x(s, p),
        z=lambda s: delaunay_z(s, p, q),
        xp=lambda s: delaunay_derivatives(s, p)[0],
        zp=lambda s: delaunay_derivatives(s, p)[1],
        xpp=lambda s: delaunay_derivatives(s, p)[2],
        zpp=lambda s: delaunay_derivatives(s, p)[3],
        tag="delaunay",
        params=p,
    )


def _cat_x(s: float) -> float:
    return math.hypot(1.0, s)


def _cat_xp(s: float) -> float:
    return s / math.hypot(1.0, s)


def _cat_zp(s: float) -> float:
    return 1.0 / math.hypot(1.0, s)


def _cat_xpp(s: float) -> float:
    return (1.0 + s * s) ** -1.5


def _cat_zpp(s: float) -> float:
    return -s * (1.0 + s * s) ** -1.5


def catenoid_curve() -> ProfileCurve:
    """Catenary ``(cosh t, t)`` reparametrized by arc length ``s = sinh t``."""
    return ProfileCurve(
        x=_cat_x,
        z=math.asinh,
        xp=_cat_xp,
        zp=_cat_zp,
        xpp=_cat_xpp,
        zpp=_cat_zpp,
        tag="catenoid",
    )
