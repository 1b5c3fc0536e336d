"""Delaunay CMC profiles, free-boundary contact in rotational ellipsoids, gap certificates."""

__version__ = "0.1.0"

from .contact import (
    ContactCertificate,
    GapReport,
    Verdict,
    catenoid_contact,
    certify_gap,
    find_contact,
    rho,
    rho_prime,
)
from .domain import (
    BoundaryCurvatures,
    DomainGenerator,
    EllipsoidSpec,
    boundary_curvatures,
    check_domain,
    ellipsoid_generator,
    evaluate_F,
    gradient_F,
    meridian_condition,
    sphere_from_equality,
    sphere_generator,
)
from .geometry import (
    GeometrySample,
    HConditionReport,
    h_conditions,
    hessian_eigenvalues,
    principal_curvatures,
    sample_geometry,
    support_g,
    surface_point,
)
from .profile import (
    DelaunayKind,
    DelaunayParams,
    ProfileCurve,
    QuadratureConfig,
    catenoid_curve,
    classify,
    delaunay_curve,
    delaunay_derivatives,
    delaunay_x,
    delaunay_z,
    first_inflection_s0,
    first_vertical_r0,
    unduloid_threshold_z0,
)
