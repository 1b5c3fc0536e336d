"""Rotational domains bounded by the revolution of a graph ``t -> (f(t), t)``.

The domain is the sublevel set ``F <= 1`` of

    F(x, y) = (|x|^2 - f(y)^2) / 2 + 1,     x in R^2, y in I.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import DegenerateError, InvalidParameterError, OutOfIntervalError


@dataclass(frozen=True)
class DomainGenerator:
    """Profile function ``f`` with analytic ``f'`` and ``f''`` on ``interval``.

    Points closer than ``edge_guard`` to either endpoint are rejected; the
    ellipsoid and sphere constructors use this to keep away from ``f = 0``.
    """

    f: Callable[[float], float]
    fp: Callable[[float], float]
    fpp: Callable[[float], float]
    interval: tuple[float, float]
    tag: str = "custom"
    edge_guard: float = 0.0

    def __post_init__(self):
        lo, hi = self.interval
        if not lo < hi:
            raise InvalidParameterError(f"empty generator interval {self.interval}")

    def check(self, y: float) -> float:
        y = float(y)
        lo, hi = self.interval
        if not (lo + self.edge_guard <= y <= hi - self.edge_guard):
            raise OutOfIntervalError(
                f"y={y!r} outside generator interval ({lo!r}, {hi!r}) "
                f"with edge guard {self.edge_guard:g}"
            )
        return y


@dataclass(frozen=True)
class EllipsoidSpec:
    """Rotational ellipsoid ``a^2 x^2 + a^2 y^2 + b^2 z^2 = R_sq`` with ``a^2 <= b^2``."""

    a: float
    b: float
    R_sq: float

    def __post_init__(self):
        for name in ("a", "b", "R_sq"):
            v = float(getattr(self, name))
            if not (math.isfinite(v) and v > 0):
                raise InvalidParameterError(f"{name} must be finite and > 0, got {v}")
            object.__setattr__(self, name, v)
        if self.a * self.a > self.b * self.b:
            raise InvalidParameterError(
                f"ellipsoid requires a^2 <= b^2, got a={self.a}, b={self.b}"
            )

    @property
    def ratio(self) -> float:
        return (self.b * self.b) / (self.a * self.a)


class BoundaryCurvatures(NamedTuple):
    K: float
    H_b: float
    kappa1: float
    kappa2: float


def evaluate_F(x: Sequence[float], y: float, g: DomainGenerator) -> float:
    y = g.check(y)
    x1, x2 = x
    return 0.5 * (x1 * x1 + x2 * x2 - g.f(y) ** 2) + 1.0


def gradient_F(x: Sequence[float], y: float, g: DomainGenerator) -> np.ndarray:
    y = g.check(y)
    x1, x2 = x
    return np.array([x1, x2, -g.f(y) * g.fp(y)])


def meridian_condition(g: DomainGenerator, y: float) -> float:
    """Signed value of ``f'^2 + f f'' + 1``; the domain is admissible where it is <= 0."""
    y = g.check(y)
    fp = g.fp(y)
    return fp * fp + g.f(y) * g.fpp(y) + 1.0


def boundary_curvatures(g: DomainGenerator, t: float) -> BoundaryCurvatures:
    """Gauss and mean curvature of the boundary plus meridian/parallel curvatures.

    Signs are taken with respect to the inward normal, so a convex boundary
    has positive curvatures.
    """
    t = g.check(t)
    f, fp, fpp = g.f(t), g.fp(t), g.fpp(t)
    w = 1.0 + fp * fp
    kappa1 = -fpp / w**1.5
    kappa2 = 1.0 / (f * math.sqrt(w))
    K = -f * fpp / (w * w * f * f)
    H_b = (w - f * fpp) / (2.0 * f * w**1.5)
    return BoundaryCurvatures(K, H_b, kappa1, kappa2)


def ellipsoid_generator(e: EllipsoidSpec) -> DomainGenerator:
    """Generator ``f(y) = (b/a) sqrt((R/b)^2 - y^2)`` on ``(-R/b, R/b)``."""
    a, b = e.a, e.b
    c = e.R_sq / (b * b)
    k = b / a
    half_width = math.sqrt(c)

    def f(y: float) -> float:
        return k * math.sqrt(c - y * y)

    def fp(y: float) -> float:
        return -k * y / math.sqrt(c - y * y)

    def fpp(y: float) -> float:
        return -k * c / (c - y * y) ** 1.5

    return DomainGenerator(f, fp, fpp, (-half_width, half_width), "ellipsoid", 1e-9)


def sphere_from_equality(c1: float, c2: float) -> tuple[np.ndarray, float]:
    """Sphere traced out when ``f'^2 + f f'' + 1 = 0``, i.e. ``f^2 = 2 c1 t - t^2 + c2``."""
    r_sq = c2 + c1 * c1
    if not r_sq > 0:
        raise DegenerateError(f"c2 + c1^2 = {r_sq!r} is not positive")
    return np.array([0.0, 0.0, float(c1)]), math.sqrt(r_sq)


def sphere_generator(c1: float, c2: float) -> DomainGenerator:
    _, radius = sphere_from_equality(c1, c2)
    c1 = float(c1)
    r_sq = radius * radius

    def f(t: float) -> float:
        return math.sqrt(r_sq - (t - c1) ** 2)

    def fp(t: float) -> float:
        return (c1 - t) / f(t)

    def fpp(t: float) -> float:
        return -r_sq / f(t) ** 3

    return DomainGenerator(f, fp, fpp, (c1 - radius, c1 + radius), "sphere", 1e-9)


@dataclass(frozen=True)
class DomainCheck:
    """Sampled admissibility summary of a generator."""

    tag: str
    interval_lo: float
    interval_hi: float
    sample_count: int
    condition_min: float
    condition_max: float
    admissible: bool
    gauss_min: float
    gauss_max: float
    mean_min: float
    mean_max: float
    kappa_gap_min: float


def check_domain(g: DomainGenerator, samples: int = 101, tol: float = 1e-12) -> DomainCheck:
    """Sample the meridian condition and boundary curvatures at interior midpoints.

    ``tol`` absorbs rounding in the sphere (equality) case.
    """
    if samples < 1:
        raise InvalidParameterError(f"samples must be >= 1, got {samples}")
    lo, hi = g.interval
    lo += g.edge_guard
    hi -= g.edge_guard
    ts = lo + (hi - lo) * (np.arange(samples) + 0.5) / samples
    cond = np.array([meridian_condition(g, t) for t in ts])
    curv = np.array([boundary_curvatures(g, t) for t in ts])
    return DomainCheck(
        tag=g.tag,
        interval_lo=g.interval[0],
        interval_hi=g.interval[1],
        sample_count=samples,
        condition_min=float(cond.min()),
        condition_max=float(cond.max()),
        admissible=bool(cond.max() <= tol),
        gauss_min=float(curv[:, 0].min()),
        gauss_max=float(curv[:, 0].max()),
        mean_min=float(curv[:, 1].min()),
        mean_max=float(curv[:, 1].max()),
        kappa_gap_min=float((curv[:, 2] - curv[:, 3]).min()),
    )
