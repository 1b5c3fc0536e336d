"""Serialization: OBJ surface meshes, CSV sample tables, JSON reports.

All floats are written with 17 significant digits so that reparsing
recovers the exact double.
"""

from __future__ import annotations

import dataclasses
import enum
import json
import math
from dataclasses import dataclass
from typing import BinaryIO, Iterable, Optional, Sequence

import numpy as np

from .errors import InvalidParameterError
from .geometry import GeometrySample
from .profile import ProfileCurve

SCHEMA_VERSION = "1"

CSV_COLUMNS = (
    "s", "x", "z", "xp", "zp", "xpp", "zpp", "k1", "k2",
    "h_n", "phi_sq", "g", "lambda1", "lambda2", "gap_margin",
)


def _num(v: float) -> str:
    return format(float(v), ".17g")


@dataclass(frozen=True)
class SurfaceMesh:
    """Triangulated surface of revolution on an ``n_s x n_theta`` grid.

    Vertex ``i * n_theta + j`` sits at ``(s_i, theta_j)``; the theta
    direction wraps around, so there is no duplicated seam column.
    """

    vertices: np.ndarray
    normals: np.ndarray
    faces: np.ndarray
    n_s: int
    n_theta: int


def build_mesh(c: ProfileCurve, s_range: tuple[float, float], n_s: int, n_theta: int) -> SurfaceMesh:
    if n_s < 2:
        raise InvalidParameterError(f"n_s must be >= 2, got {n_s}")
    if n_theta < 3:
        raise InvalidParameterError(f"n_theta must be >= 3, got {n_theta}")
    s_lo, s_hi = map(float, s_range)
    if not s_lo < s_hi:
        raise InvalidParameterError(f"empty s range {s_range}")

    ss = np.linspace(s_lo, s_hi, n_s)
    theta = 2.0 * np.pi * np.arange(n_theta) / n_theta
    ct, st = np.cos(theta), np.sin(theta)
    pts = [c.point(s) for s in ss]
    x = np.array([p.x for p in pts])[:, None]
    z = np.array([p.z for p in pts])[:, None]
    xp = np.array([p.xp for p in pts])[:, None]
    zp = np.array([p.zp for p in pts])[:, None]
    ones = np.ones((1, n_theta))

    vertices = np.stack([x * ct, x * st, z * ones], axis=-1).reshape(-1, 3)
    normals = np.stack([-zp * ct, -zp * st, xp * ones], axis=-1).reshape(-1, 3)

    i = np.arange(n_s - 1)[:, None]
    j = np.arange(n_theta)[None, :]
    v00 = i * n_theta + j
    v01 = i * n_theta + (j + 1) % n_theta
    v10 = v00 + n_theta
    v11 = v01 + n_theta
    # winding follows X_s x X_theta, which is parallel to the analytic normal
    lower = np.stack([v00, v10, v01], axis=-1).reshape(-1, 3)
    upper = np.stack([v10, v11, v01], axis=-1).reshape(-1, 3)
    faces = np.stack([lower, upper], axis=1).reshape(-1, 3)
    return SurfaceMesh(vertices, normals, faces.astype(np.int64), n_s, n_theta)


def write_obj(m: SurfaceMesh, sink: Optional[BinaryIO] = None) -> bytes:
    """Wavefront OBJ bytes with ``v``, ``vn`` and ``f i//i j//j k//k`` lines (1-based)."""
    lines = [f"v {_num(a)} {_num(b)} {_num(c)}" for a, b, c in m.vertices]
    lines += [f"vn {_num(a)} {_num(b)} {_num(c)}" for a, b, c in m.normals]
    for tri in m.faces + 1:
        a, b, c = (int(k) for k in tri)
        lines.append(f"f {a}//{a} {b}//{b} {c}//{c}")
    data = ("\n".join(lines) + "\n").encode("ascii")
    if sink is not None:
        sink.write(data)
    return data


def read_obj(data: bytes) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Parse what ``write_obj`` produces; faces come back 0-based."""
    verts, norms, faces = [], [], []
    for line in data.decode("ascii").splitlines():
        head, *rest = line.split()
        if head == "v":
            verts.append([float(t) for t in rest])
        elif head == "vn":
            norms.append([float(t) for t in rest])
        elif head == "f":
            faces.append([int(t.split("//")[0]) - 1 for t in rest])
    return np.array(verts), np.array(norms), np.array(faces, dtype=np.int64)


def write_csv(samples: Sequence[GeometrySample]) -> str:
    if not samples:
        raise InvalidParameterError("write_csv needs at least one sample")
    rows = [",".join(CSV_COLUMNS)]
    for smp in samples:
        rows.append(",".join(_num(getattr(smp, col)) for col in CSV_COLUMNS))
    return "\n".join(rows) + "\n"


def _plain(value):
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: _plain(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_plain(v) for v in value]
    if isinstance(value, np.generic):
        return value.item()
    return value


def _encode(value, indent: int) -> Iterable[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            yield "{}"
            return
        yield "{\n"
        items = list(value.items())
        for k, (key, v) in enumerate(items):
            yield f"{pad}  {json.dumps(key)}: "
            yield from _encode(v, indent + 1)
            yield ",\n" if k < len(items) - 1 else "\n"
        yield pad + "}"
    elif isinstance(value, list):
        if not value:
            yield "[]"
            return
        yield "[\n"
        for k, v in enumerate(value):
            yield pad + "  "
            yield from _encode(v, indent + 1)
            yield ",\n" if k < len(value) - 1 else "\n"
        yield pad + "]"
    elif isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        yield json.dumps(value)
    elif isinstance(value, float):
        # JSON has no inf/nan
        yield _num(value) if math.isfinite(value) else "null"
    else:
        raise TypeError(f"cannot serialize {type(value).__name__}")


_RECORD_NAMES = {
    "ContactCertificate": "contact_certificate",
    "GapReport": "gap_report",
    "DomainCheck": "domain_check",
}


def write_report(record) -> str:
    """JSON document for a certificate, gap report, domain check or plain dict.

    Field order follows the record definition, preceded by ``schema_version``
    and ``record``.
    """
    if isinstance(record, dict):
        name = "report"
    else:
        name = _RECORD_NAMES.get(type(record).__name__, type(record).__name__.lower())
    doc = {"schema_version": SCHEMA_VERSION, "record": name}
    body = _plain(record)
    if not isinstance(body, dict):
        raise TypeError(f"cannot report {type(record).__name__}")
    body.pop("schema_version", None)
    doc.update(body)
    return "".join(_encode(doc, 0)) + "\n"
