"""Orthogonal contact with rotational ellipsoids and gap certification.

A zero of the contact function

    rho(s) = x(s) - (x'(s) / z'(s)) z(s) b^2/a^2

marks a parallel circle where the rotated profile meets the ellipsoid
``a^2 (x^2 + y^2) + b^2 z^2 = a^2 x(s)^2 + b^2 z(s)^2`` orthogonally. Every
curve handled here is symmetric (``x`` even, ``z`` odd), so a root at ``s``
gives a free-boundary segment ``[-s, s]`` once the interior lies strictly
inside that ellipsoid.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from ._parallel import map_ranges
from .domain import EllipsoidSpec, ellipsoid_generator
from .errors import (
    CmcForgeError,
    ExistenceHypothesisFailed,
    InvalidParameterError,
    NoRoot,
    VerticalTangentError,
)
from .geometry import _check_ratio, _h_conditions, _hessian, _sample
from .profile import (
    DelaunayKind,
    DelaunayParams,
    ProfileCurve,
    QuadratureConfig,
    catenoid_curve,
    classify,
    delaunay_curve,
    first_inflection_s0,
    first_vertical_r0,
    unduloid_threshold_z0,
)
from .rootfind import bisect

MARGIN_TOL = 1e-12
RHO_RESIDUAL_MAX = 1e-10
SYMMETRY_RESIDUAL_MAX = 1e-9
ZP_MIN = 1e-12
BRACKET_INSET = 1e-9


def _ratio(a: float, b: float) -> float:
    a, b = float(a), float(b)
    if not (a > 0 and b > 0):
        raise InvalidParameterError(f"a and b must be positive, got a={a}, b={b}")
    if a * a > b * b:
        raise InvalidParameterError(f"requires a^2 <= b^2, got a={a}, b={b}")
    return (b * b) / (a * a)


def _rho_from(x: float, z: float, xp: float, zp: float, ratio: float, s: float) -> float:
    if abs(zp) <= ZP_MIN:
        raise VerticalTangentError(f"rho undefined at s={s!r}: z'={zp!r}")
    return x - (xp / zp) * z * ratio


def rho(s: float, c: ProfileCurve, ratio: float) -> float:
    s = c.check(s)
    return _rho_from(c.x(s), c.z(s), c.xp(s), c.zp(s), ratio, s)


def rho_prime(s: float, c: ProfileCurve, a_sq: float, b_sq: float) -> float:
    """Derivative of ``rho`` for an arc-length profile.

    Uses ``(x'/z')' = x''/z'^3``, valid because ``x'x'' + z'z'' = 0``.
    """
    s = c.check(s)
    zp = c.zp(s)
    if abs(zp) <= ZP_MIN:
        raise VerticalTangentError(f"rho' undefined at s={s!r}: z'={zp!r}")
    ratio = b_sq / a_sq
    return ((a_sq - b_sq) / a_sq) * c.xp(s) - (c.xpp(s) / zp**3) * c.z(s) * ratio


@dataclass(frozen=True)
class ContactCertificate:
    """Evidence that rotating ``[-s_bar, s_bar]`` yields a free-boundary surface.

    ``interior_min_margin`` is the smallest ``r_bar_sq - (a^2 x^2 + b^2 z^2)``
    over ``sample_count`` interior points; ``growth_ok`` records that
    ``a^2 x^2 + b^2 z^2`` was seen increasing on ``(0, s_bar]``.
    """

    curve: str
    a: float
    b: float
    s_bar: float
    r_bar_sq: float
    rho_residual: float
    symmetry_residual: float
    interior_min_margin: float
    sample_count: int
    growth_ok: bool
    B: Optional[float] = None
    H: Optional[float] = None
    s_limit: Optional[float] = None
    z_at_s0: Optional[float] = None
    z0: Optional[float] = None
    notes: tuple[str, ...] = field(default=())

    @property
    def ratio(self) -> float:
        return (self.b * self.b) / (self.a * self.a)

    @property
    def valid(self) -> bool:
        return (
            self.rho_residual <= RHO_RESIDUAL_MAX
            and self.symmetry_residual <= SYMMETRY_RESIDUAL_MAX
            and self.interior_min_margin > 0.0
        )


def _certificate(
    c: ProfileCurve, name: str, a: float, b: float, s_bar: float, samples: int, **extra
) -> ContactCertificate:
    if samples < 1:
        raise InvalidParameterError(f"samples must be >= 1, got {samples}")
    ratio = _ratio(a, b)
    a2, b2 = a * a, b * b
    x_bar, z_bar = c.x(s_bar), c.z(s_bar)
    r_bar_sq = a2 * x_bar * x_bar + b2 * z_bar * z_bar
    residual = abs(rho(s_bar, c, ratio))
    mirrored = abs(rho(-s_bar, c, ratio))

    ss = -s_bar + 2.0 * s_bar * np.arange(1, samples + 1) / (samples + 1)

    def scan(chunk: Sequence[float]) -> list[tuple[float, float]]:
        out = []
        for s in chunk:
            x, z = c.x(s), c.z(s)
            level_rate = a2 * x * c.xp(s) + b2 * z * c.zp(s)
            out.append((r_bar_sq - (a2 * x * x + b2 * z * z), level_rate))
        return out

    rows = map_ranges(scan, list(ss))
    margins = [m for m, _ in rows]
    growth_ok = all(rate > 0.0 for s, (_, rate) in zip(ss, rows) if s > 0.0)
    return ContactCertificate(
        curve=name,
        a=float(a),
        b=float(b),
        s_bar=s_bar,
        r_bar_sq=r_bar_sq,
        rho_residual=residual,
        symmetry_residual=mirrored,
        interior_min_margin=min(margins),
        sample_count=samples,
        growth_ok=growth_ok,
        **extra,
    )


def find_contact(
    p: DelaunayParams,
    a: float,
    b: float,
    q: QuadratureConfig = QuadratureConfig(),
    force_search: bool = False,
    samples: int = 1000,
) -> ContactCertificate:
    """Solve ``rho(s_bar) = 0`` on the first half-wave of an unduloid or nodoid.

    Unduloids are searched on ``(0, s0]`` only after checking the existence
    test ``z(s0) >= z0`` (skipped with ``force_search``). Nodoids are searched
    on ``(0, r0)``, where ``rho(0) > 0`` and ``rho -> -inf`` at ``r0``.

    Raises
    ------
    NoRoot
        For cylinders (``rho = x > 0`` everywhere) or a forced search that
        finds no sign change.
    ExistenceHypothesisFailed
        If the unduloid existence test fails and ``force_search`` is off.
    """
    ratio = _ratio(a, b)
    kind = classify(p)
    c = delaunay_curve(p, q)

    def f(s: float) -> float:
        return rho(s, c, ratio)

    if kind is DelaunayKind.CYLINDER:
        raise NoRoot(f"cylinder: rho is constant {1.0 / p.H!r} > 0")

    notes: list[str] = []
    extra: dict = {"B": p.B, "H": p.H}
    if kind is DelaunayKind.UNDULOID:
        s0 = first_inflection_s0(p)
        z0 = unduloid_threshold_z0(p)
        z_s0 = c.z(s0)
        extra.update(s_limit=s0, z_at_s0=z_s0, z0=z0)
        if z_s0 < z0:
            if not force_search:
                raise ExistenceHypothesisFailed(z_s0, z0)
            notes.append("existence hypothesis z(s0) >= z0 failed; search forced")
        lo, hi = BRACKET_INSET * s0, s0
    else:
        r0 = first_vertical_r0(p)
        extra.update(s_limit=r0)
        lo, hi = BRACKET_INSET * r0, r0 * (1.0 - BRACKET_INSET)

    if (f(lo) > 0) == (f(hi) > 0):
        raise NoRoot(
            f"rho has no sign change on [{lo!r}, {hi!r}]: rho={f(lo)!r}, {f(hi)!r}"
        )
    s_bar = bisect(f, lo, hi)
    return _certificate(c, kind.value, a, b, s_bar, samples, notes=tuple(notes), **extra)


def catenoid_contact(ratio: float, samples: int = 1000, cap: float = 1e6) -> ContactCertificate:
    """Contact root of the arc-length catenoid in the ellipsoid ``a = 1, b^2 = ratio``.

    The bracket's upper end doubles from 1 until ``rho`` turns negative.
    """
    ratio = float(ratio)
    if not ratio >= 1.0:
        raise InvalidParameterError(f"ratio must be >= 1, got {ratio}")
    c = catenoid_curve()

    def f(s: float) -> float:
        return rho(s, c, ratio)

    hi = 1.0
    while f(hi) > 0.0:
        hi *= 2.0
        if hi > cap:
            raise NoRoot(f"rho stays positive up to s={cap:g}")
    s_bar = bisect(f, BRACKET_INSET * hi, hi)
    t_bar = math.asinh(s_bar)
    notes = (
        f"arc-length root s_bar = {s_bar:.12g}",
        f"same root in the catenary parameter t = asinh(s_bar) = {t_bar:.12g}",
    )
    return _certificate(c, "catenoid", 1.0, math.sqrt(ratio), s_bar, samples, notes=notes)


class Verdict(enum.Enum):
    CERTIFIED = "Certified"
    VIOLATED = "Violated"
    INAPPLICABLE = "Inapplicable"


@dataclass(frozen=True)
class GapReport:
    """Sampled check of the gap inequality on ``[s_lo, s_hi]``.

    ``min_hessian_excess`` is the smallest ``lambda_i - lambda~_i`` over the
    samples, using the exact Hessian eigenvalues for the certified ellipsoid.
    """

    s_lo: float
    s_hi: float
    sample_count: int
    min_lambda1: Optional[float]
    min_lambda2: Optional[float]
    min_gap_margin: Optional[float]
    worst_h1: Optional[float]
    worst_h2: Optional[float]
    worst_h3: Optional[float]
    max_abs_h_n: Optional[float]
    min_hessian_excess: Optional[float]
    verdict: Verdict
    offending_s: Optional[float] = None
    reason: Optional[str] = None


def _min_or_none(values):
    values = [v for v in values if v is not None]
    return min(values) if values else None


def certify_gap(c: ProfileCurve, cert: ContactCertificate, samples: int = 2048) -> GapReport:
    """Evaluate the gap inequality and the h1-h3 margins on ``[-s_bar, s_bar]``.

    Any evaluation error makes the report Inapplicable at the offending ``s``.
    """
    if samples < 2:
        raise InvalidParameterError(f"samples must be >= 2, got {samples}")
    ratio = cert.ratio
    gen = ellipsoid_generator(EllipsoidSpec(cert.a, cert.b, cert.r_bar_sq))
    ss = list(np.linspace(-cert.s_bar, cert.s_bar, samples))

    def evaluate(chunk: Sequence[float]) -> list:
        out = []
        for s in chunk:
            try:
                pt = c.point(s)
                geo = _sample(float(s), pt, ratio)
                hc = _h_conditions(float(s), pt, ratio)
                lam1, lam2 = _hessian(pt, gen)
            except (CmcForgeError, ArithmeticError, ValueError) as exc:
                out.append((float(s), exc))
                continue
            out.append((geo, hc, min(lam1 - geo.lambda1, lam2 - geo.lambda2)))
        return out

    rows = map_ranges(evaluate, ss)
    for row in rows:
        if isinstance(row[1], Exception):
            return GapReport(
                s_lo=-cert.s_bar,
                s_hi=cert.s_bar,
                sample_count=samples,
                min_lambda1=None,
                min_lambda2=None,
                min_gap_margin=None,
                worst_h1=None,
                worst_h2=None,
                worst_h3=None,
                max_abs_h_n=None,
                min_hessian_excess=None,
                verdict=Verdict.INAPPLICABLE,
                offending_s=row[0],
                reason=f"{type(row[1]).__name__}: {row[1]}",
            )

    offending = None
    reason = None
    for geo, hc, _ in rows:
        bad = []
        if min(geo.lambda1, geo.lambda2) < -MARGIN_TOL:
            bad.append("lambda")
        if any(m < -MARGIN_TOL for m in hc.applicable_margins()):
            bad.append("h-condition")
        if geo.gap_margin < -MARGIN_TOL:
            bad.append("gap inequality")
        if bad:
            offending, reason = geo.s, " and ".join(bad) + " below tolerance"
            break

    return GapReport(
        s_lo=-cert.s_bar,
        s_hi=cert.s_bar,
        sample_count=samples,
        min_lambda1=min(r[0].lambda1 for r in rows),
        min_lambda2=min(r[0].lambda2 for r in rows),
        min_gap_margin=min(r[0].gap_margin for r in rows),
        worst_h1=_min_or_none(r[1].h1_margin for r in rows),
        worst_h2=_min_or_none(r[1].h2_margin for r in rows if r[1].h2_applicable),
        worst_h3=min(r[1].h3_margin for r in rows),
        max_abs_h_n=max(abs(r[0].h_n) for r in rows),
        min_hessian_excess=min(r[2] for r in rows),
        verdict=Verdict.CERTIFIED if offending is None else Verdict.VIOLATED,
        offending_s=offending,
        reason=reason,
    )


def sample_range(
    c: ProfileCurve, s_min: float, s_max: float, samples: int, ratio: float
) -> list:
    """GeometrySamples on a uniform grid, evaluated by range partition."""
    if samples < 2:
        raise InvalidParameterError(f"samples must be >= 2, got {samples}")
    if not s_min < s_max:
        raise InvalidParameterError(f"need s_min < s_max, got [{s_min}, {s_max}]")
    ratio = _check_ratio(ratio)
    ss = [float(s) for s in np.linspace(s_min, s_max, samples)]
    return map_ranges(lambda chunk: [_sample(s, c.point(s), ratio) for s in chunk], ss)
