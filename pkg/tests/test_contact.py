import dataclasses
import math

import numpy as np
import pytest
from scipy import integrate as sp_integrate
from scipy.optimize import brentq

from cmcforge import (
    DelaunayParams,
    QuadratureConfig,
    Verdict,
    catenoid_contact,
    catenoid_curve,
    certify_gap,
    delaunay_curve,
    find_contact,
    first_inflection_s0,
    first_vertical_r0,
    rho,
    rho_prime,
    support_g,
)
from cmcforge.errors import ExistenceHypothesisFailed, InvalidParameterError, NoRoot, VerticalTangentError

from conftest import central_diff, close_scaled

SQRT2 = math.sqrt(2.0)

# scipy quad on the phase-shifted integrand + brentq on rho (xtol, rtol 1e-15)
ORACLE = {
    "unduloid": (0.913628504948012, 3.1483081633065217),
    "nodoid": (0.7976089137676858, 2.729596674212287),
    "catenoid2": (0.8506102268772883, 2.914586697013652),
    "catenoid1": (1.5088795615383201, 4.715946371118719),
}


def _oracle_contact(B, H, ratio, hi):
    """Contact root from a route that shares nothing with the package."""
    shift = 1.5 * math.pi / H

    def parts(s):
        ph = H * s + 1.5 * math.pi
        q = 1 + B * B + 2 * B * math.sin(ph)
        zp = lambda t: (1 + B * math.sin(H * t)) / math.sqrt(1 + B * B + 2 * B * math.sin(H * t))
        z, _ = sp_integrate.quad(zp, shift, shift + s, epsabs=1e-13, epsrel=1e-13)
        return math.sqrt(q) / H, z, B * math.cos(ph) / math.sqrt(q), (1 + B * math.sin(ph)) / math.sqrt(q)

    def f(s):
        x, z, xp, zp = parts(s)
        return x - xp / zp * z * ratio

    return brentq(f, 1e-9 * hi, hi, xtol=1e-15, rtol=1e-15)


def test_unduloid_contact_frozen():
    cert = find_contact(DelaunayParams(0.9, 0.1), 1.0, SQRT2)
    s_ref, r_ref = ORACLE["unduloid"]
    assert cert.s_bar == pytest.approx(s_ref, abs=1e-10)
    assert cert.r_bar_sq == pytest.approx(r_ref, rel=1e-10)
    assert cert.rho_residual <= 1e-10
    assert cert.interior_min_margin > 0
    assert cert.growth_ok and cert.valid
    assert cert.z_at_s0 >= cert.z0
    assert cert.curve == "unduloid"


def test_nodoid_contact_frozen():
    p = DelaunayParams(1.1, 0.1)
    cert = find_contact(p, 1.0, SQRT2)
    s_ref, r_ref = ORACLE["nodoid"]
    assert cert.s_bar == pytest.approx(s_ref, abs=1e-10)
    assert cert.r_bar_sq == pytest.approx(r_ref, rel=1e-10)
    assert 0 < cert.s_bar < first_vertical_r0(p)
    assert cert.valid


def test_contact_live_oracle():
    B, H, ratio = 2.0, 0.5, 3.0
    p = DelaunayParams(B, H)
    r0 = first_vertical_r0(p)
    ref = _oracle_contact(B, H, ratio, r0 * (1 - 1e-9))
    cert = find_contact(p, 1.0, math.sqrt(ratio), QuadratureConfig(tol=1e-12))
    assert cert.s_bar == pytest.approx(ref, abs=1e-10)


@pytest.mark.parametrize("ratio, key", [(2.0, "catenoid2"), (1.0, "catenoid1")])
def test_catenoid_contact_frozen(ratio, key):
    cert = catenoid_contact(ratio)
    s_ref, r_ref = ORACLE[key]
    assert cert.s_bar == pytest.approx(s_ref, abs=1e-10)
    assert cert.r_bar_sq == pytest.approx(r_ref, rel=1e-10)
    assert cert.valid
    # the same root in the catenary parameter is carried in the notes
    assert any(f"{math.asinh(cert.s_bar):.12g}" in n for n in cert.notes)


def test_catenoid_equation():
    # rho = 0 on the catenoid reduces to 1/(2 t) = tanh t with t = asinh(s), ratio 2
    cert = catenoid_contact(2.0)
    t = math.asinh(cert.s_bar)
    assert 1.0 / (2.0 * t) == pytest.approx(math.tanh(t), abs=1e-12)


def test_cylinder_no_root():
    with pytest.raises(NoRoot):
        find_contact(DelaunayParams(0.0, 1.0), 1.0, 2.0)


def test_existence_hypothesis_failed():
    with pytest.raises(ExistenceHypothesisFailed) as info:
        find_contact(DelaunayParams(0.5, 1.0), 1.0, SQRT2)
    assert info.value.z_at_s0 < info.value.z0


def test_forced_search_is_flagged():
    cert = find_contact(DelaunayParams(0.5, 1.0), 1.0, SQRT2, force_search=True)
    assert cert.rho_residual <= 1e-10
    assert any("forced" in n for n in cert.notes)


def test_forced_search_can_still_fail():
    with pytest.raises(NoRoot):
        find_contact(DelaunayParams(0.2, 1.0), 1.0, SQRT2, force_search=True)


def test_bad_ellipsoid():
    with pytest.raises(InvalidParameterError):
        find_contact(DelaunayParams(0.9, 0.1), 2.0, 1.0)
    with pytest.raises(InvalidParameterError):
        catenoid_contact(0.5)


def test_rho_at_origin():
    # x' = 0 at s = 0, so rho(0) = x(0)
    c = delaunay_curve(DelaunayParams(0.9, 0.1))
    assert rho(0.0, c, 2.0) == pytest.approx(1.0, rel=1e-14)


def test_rho_vertical_tangent():
    p = DelaunayParams(1.1, 0.1)
    c = delaunay_curve(p)
    with pytest.raises(VerticalTangentError):
        rho(first_vertical_r0(p), c, 2.0)


@pytest.mark.parametrize("B, H", [(0.9, 0.1), (1.1, 0.1), (0.4, 1.3)])
def test_rho_prime_fd(B, H, fine_quad):
    c = delaunay_curve(DelaunayParams(B, H), fine_quad)
    a_sq, b_sq = 1.0, 2.5
    for s in np.linspace(-3.0, 3.0, 13):
        fd = central_diff(lambda t: rho(t, c, b_sq / a_sq), s)
        assert close_scaled(fd, rho_prime(s, c, a_sq, b_sq), 1e-6)


def test_symmetry_residual_small():
    cert = find_contact(DelaunayParams(1.1, 0.1), 1.0, SQRT2)
    assert cert.symmetry_residual <= 1e-9


@pytest.mark.parametrize(
    "curve, make",
    [
        (delaunay_curve(DelaunayParams(0.9, 0.1)), lambda: find_contact(DelaunayParams(0.9, 0.1), 1.0, SQRT2)),
        (delaunay_curve(DelaunayParams(1.1, 0.1)), lambda: find_contact(DelaunayParams(1.1, 0.1), 1.0, SQRT2)),
        (catenoid_curve(), lambda: catenoid_contact(2.0)),
    ],
)
def test_certified_reports(curve, make):
    rep = certify_gap(curve, make(), samples=512)
    assert rep.verdict is Verdict.CERTIFIED
    assert min(rep.min_lambda1, rep.min_lambda2) >= -1e-12
    assert rep.min_gap_margin >= -1e-12
    assert rep.min_hessian_excess >= -1e-12
    assert rep.offending_s is None


def test_violated_when_segment_overreaches():
    p = DelaunayParams(2.0, 0.5)
    cert = find_contact(p, 1.0, SQRT2)
    wide = dataclasses.replace(cert, s_bar=3.0, r_bar_sq=1e4)
    rep = certify_gap(delaunay_curve(p), wide, samples=256)
    assert rep.verdict is Verdict.VIOLATED
    assert rep.offending_s == pytest.approx(-3.0)
    assert "gap inequality" in rep.reason


def test_inapplicable_outside_generator():
    cert = catenoid_contact(2.0)
    shrunk = dataclasses.replace(cert, r_bar_sq=0.5)
    rep = certify_gap(catenoid_curve(), shrunk, samples=64)
    assert rep.verdict is Verdict.INAPPLICABLE
    assert "OutOfIntervalError" in rep.reason
    assert rep.min_lambda1 is None


def test_thread_count_does_not_change_results(monkeypatch):
    p = DelaunayParams(0.9, 0.1)
    c = delaunay_curve(p)
    monkeypatch.setenv("CMC_FORGE_THREADS", "1")
    one = certify_gap(c, find_contact(p, 1.0, SQRT2), samples=300)
    monkeypatch.setenv("CMC_FORGE_THREADS", "7")
    many = certify_gap(c, find_contact(p, 1.0, SQRT2), samples=300)
    assert one == many


@pytest.mark.parametrize("B, H", [(0.9, 0.1), (1.1, 0.1), (2.5, 0.4)])
def test_rho_at_zero_is_waist_radius(B, H):
    c = delaunay_curve(DelaunayParams(B, H))
    assert rho(0.0, c, 2.0) == pytest.approx(abs(1 - B) / H, rel=1e-14)
    assert rho_prime(0.0, c, 1.0, 2.0) == 0.0


def test_rho_prime_at_inflection():
    p = DelaunayParams(0.9, 0.1)
    c = delaunay_curve(p)
    s0 = first_inflection_s0(p)
    assert rho_prime(s0, c, 1.0, 2.0) == pytest.approx(-0.9, abs=1e-12)
    assert rho_prime(2.0, c, 1.0, 2.0) < 0


def test_unduloid_rho_monotone_halves():
    p = DelaunayParams(0.9, 0.1)
    c = delaunay_curve(p)
    s0 = first_inflection_s0(p)
    for s in np.linspace(1e-3, s0 - 1e-3, 60):
        assert rho_prime(s, c, 1.0, 2.0) < 0
        assert rho_prime(-s, c, 1.0, 2.0) > 0


@pytest.mark.parametrize(
    "curve, cert",
    [
        (delaunay_curve(DelaunayParams(0.9, 0.1)), find_contact(DelaunayParams(0.9, 0.1), 1.0, SQRT2)),
        (delaunay_curve(DelaunayParams(1.1, 0.1)), find_contact(DelaunayParams(1.1, 0.1), 1.0, SQRT2)),
        (catenoid_curve(), catenoid_contact(2.0)),
    ],
)
def test_certificate_soundness(curve, cert):
    sb = cert.s_bar
    g = support_g(sb, curve, cert.ratio)
    assert abs(g) <= 1e-8 * max(1.0, abs(curve.zp(sb)))
    mirrored = cert.a**2 * curve.x(-sb) ** 2 + cert.b**2 * curve.z(-sb) ** 2
    assert mirrored == pytest.approx(cert.r_bar_sq, abs=1e-9)
    assert abs(rho(-sb, curve, cert.ratio) - rho(sb, curve, cert.ratio)) <= 1e-10
