"""Adaptive Gauss-Legendre quadrature with interval halving."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .errors import InvalidParameterError, QuadratureError

_ORDER = 10
_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(_ORDER)
_EPS = np.finfo(float).eps


def _panel(f: Callable[[np.ndarray], np.ndarray], a: float, b: float) -> float:
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    return half * float(np.dot(_WEIGHTS, f(mid + half * _NODES)))


def integrate(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    tol: float = 1e-10,
    max_subdivisions: int = 10_000,
) -> float:
    """Signed integral of a vectorized integrand ``f`` over ``[a, b]``.

    Each panel is compared against the sum of its two halves; a panel is
    accepted once the difference falls below its share of ``tol`` (scaled by
    panel width). The halves' sum is kept, so the returned value is usually
    far more accurate than ``tol``.

    Raises
    ------
    QuadratureError
        If more than ``max_subdivisions`` splits are needed.
    """
    if not tol > 0:
        raise InvalidParameterError(f"tolerance must be positive, got {tol}")
    if max_subdivisions < 1:
        raise InvalidParameterError(f"max_subdivisions must be >= 1, got {max_subdivisions}")
    if a == b:
        return 0.0
    if b < a:
        return -integrate(f, b, a, tol, max_subdivisions)

    width = b - a
    pieces: list[float] = []
    stack = [(a, b, _panel(f, a, b))]
    splits = 0
    while stack:
        lo, hi, whole = stack.pop()
        mid = 0.5 * (lo + hi)
        left = _panel(f, lo, mid)
        right = _panel(f, mid, hi)
        refined = left + right
        local_tol = tol * (hi - lo) / width
        # the rounding floor keeps tiny tolerances from splitting forever
        floor = 64.0 * _EPS * abs(refined)
        if abs(refined - whole) <= max(local_tol, floor) or mid <= lo or mid >= hi:
            pieces.append(refined)
            continue
        splits += 1
        if splits > max_subdivisions:
            raise QuadratureError(
                f"tolerance {tol:g} not reached on [{a!r}, {b!r}] "
                f"within {max_subdivisions} subdivisions"
            )
        stack.append((mid, hi, right))
        stack.append((lo, mid, left))
    return math.fsum(pieces)
