import math

import pytest

from cmcforge import DelaunayParams, delaunay_curve, QuadratureConfig


# Set by tests/test_acceptance.py; printed once at the end of the session.
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


def central_diff(fn, s, h=1e-5):
    return (fn(s + h) - fn(s - h)) / (2.0 * h)


def close_scaled(actual, expected, rel):
    """|actual - expected| <= rel * max(|expected|, 1)."""
    return abs(actual - expected) <= rel * max(abs(expected), 1.0)


@pytest.fixture
def unduloid():
    return delaunay_curve(DelaunayParams(0.9, 0.1))


@pytest.fixture
def nodoid():
    return delaunay_curve(DelaunayParams(1.1, 0.1))


@pytest.fixture
def sqrt2():
    return math.sqrt(2.0)


@pytest.fixture
def fine_quad():
    return QuadratureConfig(tol=1e-13)
