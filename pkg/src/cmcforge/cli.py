"""Command-line front end.

Exit codes: 0 success or Certified, 2 a checked hypothesis is false
(inadmissible domain, gap Violated, existence test failed, no contact root),
1 usage or numeric error. Data goes to ``--out`` or stdout; diagnostics to
stderr.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Optional, Sequence

from . import __version__
from .contact import (
    ContactCertificate,
    Verdict,
    catenoid_contact,
    certify_gap,
    find_contact,
    sample_range,
)
from .domain import EllipsoidSpec, check_domain, ellipsoid_generator
from .errors import CmcForgeError, ExistenceHypothesisFailed, NoRoot
from .export import build_mesh, write_csv, write_obj, write_report
from .profile import DelaunayParams, ProfileCurve, QuadratureConfig, catenoid_curve, delaunay_curve

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VIOLATED = 2

_FORMATS = {
    "domain": ("json",),
    "profile": ("csv", "json"),
    "contact": ("json",),
    "certify": ("json",),
    "mesh": ("obj",),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _add_common(p: argparse.ArgumentParser, curve: bool = True) -> None:
    if curve:
        p.add_argument("--B", type=float, help="Kenmotsu amplitude B >= 0, B != 1")
        p.add_argument("--H", type=float, help="Kenmotsu curvature parameter H > 0")
        p.add_argument("--catenoid", action="store_true", help="use the arc-length catenoid")
        p.add_argument("--ratio", type=float, help="b^2/a^2 (alternative to --a/--b)")
        p.add_argument("--tol", type=float, default=1e-10, help="quadrature tolerance")
    p.add_argument("--a", type=float, help="ellipsoid coefficient a > 0")
    p.add_argument("--b", type=float, help="ellipsoid coefficient b >= a")
    p.add_argument("--samples", type=int, help="number of samples (>= 2)")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", help="output format")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cmc-forge", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    dom = sub.add_parser("domain", help="rotational domain checks")
    dom_sub = dom.add_subparsers(dest="action", parser_class=_Parser)
    chk = dom_sub.add_parser("check", help="meridian condition and boundary curvatures")
    _add_common(chk, curve=False)
    chk.add_argument("--R", type=float, required=True, help="level constant R > 0 (R^2 on the right)")

    prof = sub.add_parser("profile", help="CSV of geometry samples")
    _add_common(prof)
    prof.add_argument("--s-min", type=float, required=True)
    prof.add_argument("--s-max", type=float, required=True)

    con = sub.add_parser("contact", help="solve the orthogonal-contact parameter")
    _add_common(con)
    con.add_argument("--force-search", action="store_true",
                     help="search even if the unduloid existence test fails")

    cert = sub.add_parser("certify", help="gap-condition report on the contact segment")
    _add_common(cert)
    cert.add_argument("--force-search", action="store_true")

    mesh = sub.add_parser("mesh", help="OBJ mesh of the contact segment or an explicit range")
    _add_common(mesh)
    mesh.add_argument("--s-min", type=float)
    mesh.add_argument("--s-max", type=float)
    mesh.add_argument("--theta-samples", type=int, default=64)
    mesh.add_argument("--force-search", action="store_true")
    return parser


def _ellipsoid_ab(args) -> tuple[float, float]:
    if args.a is not None or args.b is not None:
        a = 1.0 if args.a is None else args.a
        b = 1.0 if args.b is None else args.b
        if getattr(args, "ratio", None) is not None:
            raise UsageError("give either --a/--b or --ratio, not both")
    elif getattr(args, "ratio", None) is not None:
        a, b = 1.0, math.sqrt(args.ratio) if args.ratio > 0 else float("nan")
    else:
        a = b = 1.0
    if not (a > 0 and b > 0):
        raise UsageError(f"ellipsoid coefficients must be positive, got a={a}, b={b}")
    if a * a > b * b:
        raise UsageError(f"need a^2 <= b^2, got a={a}, b={b}")
    return a, b


def _curve(args) -> tuple[ProfileCurve, Optional[DelaunayParams]]:
    if args.catenoid:
        if args.B is not None or args.H is not None:
            raise UsageError("--catenoid takes no --B/--H")
        return catenoid_curve(), None
    if args.B is None or args.H is None:
        raise UsageError("--B and --H are required (or --catenoid)")
    if args.B == 1.0:
        raise UsageError("B = 1 is excluded")
    if not args.H > 0:
        raise UsageError(f"H must be > 0, got {args.H}")
    if not args.B >= 0:
        raise UsageError(f"B must be >= 0, got {args.B}")
    if not args.tol > 0:
        raise UsageError(f"--tol must be > 0, got {args.tol}")
    p = DelaunayParams(args.B, args.H)
    return delaunay_curve(p, QuadratureConfig(tol=args.tol)), p


def _samples(args, default: int) -> int:
    n = default if args.samples is None else args.samples
    if n < 2:
        raise UsageError(f"--samples must be >= 2, got {n}")
    return n


def _format(args) -> str:
    allowed = _FORMATS[args.command]
    fmt = args.format or allowed[0]
    if fmt not in allowed:
        raise UsageError(f"{args.command} supports --format {'|'.join(allowed)}, got {fmt}")
    return fmt


def _emit(args, data: str | bytes) -> None:
    if isinstance(data, str):
        data = data.encode("utf-8")
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _contact(args, curve: ProfileCurve, p: Optional[DelaunayParams], a: float, b: float) -> ContactCertificate:
    if p is None:
        return catenoid_contact(b * b / (a * a))
    return find_contact(p, a, b, QuadratureConfig(tol=args.tol), force_search=args.force_search)


def _run_domain(args) -> int:
    if args.action != "check":
        raise UsageError("usage: cmc-forge domain check --a A --b B --R R")
    _format(args)
    a, b = _ellipsoid_ab(args)
    if not args.R > 0:
        raise UsageError(f"--R must be > 0, got {args.R}")
    report = check_domain(ellipsoid_generator(EllipsoidSpec(a, b, args.R * args.R)),
                          samples=_samples(args, 101))
    _emit(args, write_report(report))
    if not report.admissible:
        print(f"meridian condition violated: max value {report.condition_max!r} > 0",
              file=sys.stderr)
        return EXIT_VIOLATED
    return EXIT_OK


def _run_profile(args) -> int:
    fmt = _format(args)
    curve, _ = _curve(args)
    a, b = _ellipsoid_ab(args)
    if not args.s_min < args.s_max:
        raise UsageError(f"need --s-min < --s-max, got {args.s_min}, {args.s_max}")
    samples = sample_range(curve, args.s_min, args.s_max, _samples(args, 101), b * b / (a * a))
    if fmt == "csv":
        _emit(args, write_csv(samples))
    else:
        _emit(args, write_report({"samples": samples}))
    return EXIT_OK


def _run_contact(args) -> int:
    _format(args)
    curve, p = _curve(args)
    a, b = _ellipsoid_ab(args)
    cert = _contact(args, curve, p, a, b)
    _emit(args, write_report(cert))
    if not cert.valid:
        print(f"certificate invariants fail: rho_residual={cert.rho_residual!r}, "
              f"interior_min_margin={cert.interior_min_margin!r}", file=sys.stderr)
        return EXIT_VIOLATED
    return EXIT_OK


def _run_certify(args) -> int:
    _format(args)
    curve, p = _curve(args)
    a, b = _ellipsoid_ab(args)
    cert = _contact(args, curve, p, a, b)
    report = certify_gap(curve, cert, samples=_samples(args, 2048))
    _emit(args, write_report(report))
    if report.verdict is Verdict.CERTIFIED:
        return EXIT_OK
    print(f"verdict {report.verdict.value} at s={report.offending_s!r}: {report.reason}",
          file=sys.stderr)
    return EXIT_VIOLATED if report.verdict is Verdict.VIOLATED else EXIT_ERROR


def _run_mesh(args) -> int:
    _format(args)
    curve, p = _curve(args)
    a, b = _ellipsoid_ab(args)
    if (args.s_min is None) != (args.s_max is None):
        raise UsageError("give both --s-min and --s-max, or neither")
    if args.s_min is None:
        s_bar = _contact(args, curve, p, a, b).s_bar
        s_range = (-s_bar, s_bar)
    else:
        s_range = (args.s_min, args.s_max)
        if not s_range[0] < s_range[1]:
            raise UsageError(f"need --s-min < --s-max, got {s_range}")
    if args.theta_samples < 3:
        raise UsageError(f"--theta-samples must be >= 3, got {args.theta_samples}")
    mesh = build_mesh(curve, s_range, _samples(args, 64), args.theta_samples)
    _emit(args, write_obj(mesh))
    return EXIT_OK


_COMMANDS = {
    "domain": _run_domain,
    "profile": _run_profile,
    "contact": _run_contact,
    "certify": _run_certify,
    "mesh": _run_mesh,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(parser.format_usage().rstrip())
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(str(exc).rstrip(), file=sys.stderr)
        return EXIT_ERROR
    except ExistenceHypothesisFailed as exc:
        print(f"ExistenceHypothesisFailed: z(s0)={exc.z_at_s0!r} z0={exc.z0!r}", file=sys.stderr)
        return EXIT_VIOLATED
    except NoRoot as exc:
        print(f"NoRoot: {exc}", file=sys.stderr)
        return EXIT_VIOLATED
    except CmcForgeError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())
