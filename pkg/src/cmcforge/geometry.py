"""Pointwise geometry of the surface obtained by rotating a profile about the z-axis.

Conventions: the unit normal is ``N = (-z' cos t, -z' sin t, x')``, the
meridian curvature is ``k1 = x' z'' - x'' z'`` and the parallel curvature
``k2 = z' / x``. ``h_n`` is the normalized mean curvature ``(k1 + k2) / 2``;
for a Delaunay profile ``k1 + k2`` equals the Kenmotsu parameter ``H``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .domain import DomainGenerator, meridian_condition
from .errors import InvalidParameterError
from .profile import CurvePoint, ProfileCurve

# band around z' = 0 inside which a tangent counts as horizontal
ZP_BRANCH = 1e-8


def surface_point(s: float, theta: float, c: ProfileCurve) -> tuple[np.ndarray, np.ndarray]:
    """Position ``X(s, theta)`` and unit normal ``N(s, theta)``."""
    s = c.check(s)
    x, z, xp, zp = c.x(s), c.z(s), c.xp(s), c.zp(s)
    ct, st = math.cos(theta), math.sin(theta)
    position = np.array([x * ct, x * st, z])
    normal = np.array([-zp * ct, -zp * st, xp])
    return position, normal


def _curvatures(pt: CurvePoint) -> tuple[float, float]:
    return pt.xp * pt.zpp - pt.xpp * pt.zp, pt.zp / pt.x


def principal_curvatures(s: float, c: ProfileCurve) -> tuple[float, float]:
    return _curvatures(c.point(s))


def _check_ratio(ratio: float) -> float:
    ratio = float(ratio)
    if not ratio >= 1.0:
        raise InvalidParameterError(f"ratio b^2/a^2 must be >= 1, got {ratio}")
    return ratio


def _support(pt: CurvePoint, ratio: float) -> float:
    return -pt.x * pt.zp + pt.xp * pt.z * ratio


def support_g(s: float, c: ProfileCurve, ratio: float) -> float:
    """``<grad F, N>`` for the ellipsoid with ``b^2/a^2 = ratio``; zero at orthogonal contact."""
    return _support(c.point(s), _check_ratio(ratio))


@dataclass(frozen=True)
class GeometrySample:
    """Every pointwise quantity at one profile parameter.

    ``lambda1`` and ``lambda2`` are the lower bounds ``1 + k_i g`` for the
    Hessian eigenvalues of F restricted to the surface; ``gap_margin`` is
    ``(2 + 2 h_n g)^2 / 2 - phi_sq g^2`` which is non-negative exactly when the
    gap (pinching) inequality holds.
    """

    s: float
    x: float
    z: float
    xp: float
    zp: float
    xpp: float
    zpp: float
    k1: float
    k2: float
    h_n: float
    phi_sq: float
    g: float
    lambda1: float
    lambda2: float
    gap_margin: float


def _sample(s: float, pt: CurvePoint, ratio: float) -> GeometrySample:
    k1, k2 = _curvatures(pt)
    h_n = 0.5 * (k1 + k2)
    phi_sq = 0.5 * (k1 - k2) ** 2
    g = _support(pt, ratio)
    lead = 2.0 + 2.0 * h_n * g
    return GeometrySample(
        s=s,
        x=pt.x,
        z=pt.z,
        xp=pt.xp,
        zp=pt.zp,
        xpp=pt.xpp,
        zpp=pt.zpp,
        k1=k1,
        k2=k2,
        h_n=h_n,
        phi_sq=phi_sq,
        g=g,
        lambda1=1.0 + k1 * g,
        lambda2=1.0 + k2 * g,
        gap_margin=0.5 * lead * lead - phi_sq * g * g,
    )


def sample_geometry(s: float, c: ProfileCurve, ratio: float) -> GeometrySample:
    ratio = _check_ratio(ratio)
    s = c.check(s)
    return _sample(s, c.point(s), ratio)


def generator_support(pt: CurvePoint, gen: DomainGenerator) -> float:
    """``<grad F, N>`` evaluated with a general generator's gradient."""
    y = gen.check(pt.z)
    return -pt.x * pt.zp + pt.xp * (-gen.f(y) * gen.fp(y))


def hessian_eigenvalues(s: float, c: ProfileCurve, gen: DomainGenerator) -> tuple[float, float]:
    """Exact eigenvalues of Hess F restricted to the surface, in the meridian/parallel frame.

    The tangential part of ``E3`` is ``z' e1``, so the correction term only
    touches the meridian direction:

        lambda1 = 1 + g k1 - c(z) z'^2,    lambda2 = 1 + g k2

    where ``c`` is the meridian condition of ``gen``.
    """
    return _hessian(c.point(s), gen)


def _hessian(pt: CurvePoint, gen: DomainGenerator) -> tuple[float, float]:
    g = generator_support(pt, gen)
    k1, k2 = _curvatures(pt)
    cond = meridian_condition(gen, pt.z)
    return 1.0 + g * k1 - cond * pt.zp * pt.zp, 1.0 + g * k2


@dataclass(frozen=True)
class HConditionReport:
    """Signed margins of the three sufficient conditions for the gap inequality.

    ``h1_margin`` is ``None`` where the tangent is horizontal (``h2`` takes
    over there); ``h2_margin`` is always computed but only counts when
    ``h2_applicable`` is set.
    """

    s: float
    h1_margin: Optional[float]
    h2_margin: float
    h3_margin: float
    h2_applicable: bool

    def applicable_margins(self) -> list[float]:
        out = [self.h3_margin]
        if self.h2_applicable:
            out.append(self.h2_margin)
        if self.h1_margin is not None:
            out.append(self.h1_margin)
        return out


def _h_conditions(s: float, pt: CurvePoint, ratio: float) -> HConditionReport:
    horizontal = abs(pt.zp) <= ZP_BRANCH
    h1 = None
    if not horizontal:
        rho = pt.x - (pt.xp / pt.zp) * pt.z * ratio
        h1 = 1.0 + pt.xpp * rho
    return HConditionReport(
        s=s,
        h1_margin=h1,
        h2_margin=1.0 + pt.z * pt.zpp * ratio,
        h3_margin=pt.x * pt.xp * pt.xp + pt.zp * pt.xp * pt.z * ratio,
        h2_applicable=horizontal,
    )


def h_conditions(s: float, c: ProfileCurve, ratio: float) -> HConditionReport:
    ratio = _check_ratio(ratio)
    s = c.check(s)
    return _h_conditions(s, c.point(s), ratio)
