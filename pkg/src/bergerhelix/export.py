"""Stereographic projection and deterministic mesh / table emission.

All text output is ASCII with LF line endings and %.17g floats, so a
re-export of the same data is byte-identical and every printed value
parses back to the same double.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from .errors import AtPole, EmptyGrid, OutOfDomain
from .surface import SurfaceGrid

POLE_TOL = 1e-9


def stereographic(p, pole: int = 4) -> np.ndarray:
    """Project a point of S^3 to R^3 from the pole on the given axis.

    sigma(x) = (x_i)_{i != pole} / (1 - x_pole).  pole is 1-based.
    """
    if pole not in (1, 2, 3, 4):
        raise OutOfDomain(f"pole axis must be in 1..4, got {pole}")
    p = np.asarray(p, dtype=float)
    k = pole - 1
    denom = 1.0 - p[k]
    if abs(denom) < POLE_TOL:
        raise AtPole(f"point lies within {POLE_TOL} of the projection pole")
    return np.delete(p, k) / denom


def stereographic_inverse(y, pole: int = 4) -> np.ndarray:
    """Inverse of stereographic: R^3 back to the unit 3-sphere."""
    if pole not in (1, 2, 3, 4):
        raise OutOfDomain(f"pole axis must be in 1..4, got {pole}")
    y = np.asarray(y, dtype=float)
    s = float(y @ y)
    out = np.insert(2.0 * y / (s + 1.0), pole - 1, (s - 1.0) / (s + 1.0))
    return out


@dataclass
class ProjectedMesh:
    """Projected grid vertices plus the triangulation.

    vertices is (nu*nv, 3) in row-major grid order; faces hold 0-based
    vertex triples; defect vertices (pole hits or grid defects) keep a
    zero placeholder so indexing stays dense, and no face touches them.
    """

    nu: int
    nv: int
    vertices: np.ndarray
    faces: List[Tuple[int, int, int]]
    defects: List[Tuple[int, int]] = field(default_factory=list)


def project_grid(grid: SurfaceGrid, pole: int = 4) -> ProjectedMesh:
    """Stereographically project every grid sample and triangulate.

    Each quad contributes two triangles; quads touching a defect sample
    are dropped.
    """
    if pole not in (1, 2, 3, 4):
        raise OutOfDomain(f"pole axis must be in 1..4, got {pole}")
    nu, nv = grid.shape
    k = pole - 1
    P = grid.positions.reshape(nu * nv, 4)
    denom = 1.0 - P[:, k]
    bad = np.abs(denom) < POLE_TOL
    verts = np.zeros((nu * nv, 3))
    rest = np.delete(P, k, axis=1)
    verts[~bad] = rest[~bad] / denom[~bad, None]

    defect_flat = set(np.nonzero(bad)[0].tolist())
    defects = sorted((int(i // nv), int(i % nv)) for i in defect_flat)

    faces: List[Tuple[int, int, int]] = []
    for i in range(nu - 1):
        for j in range(nv - 1):
            a = i * nv + j
            b = a + 1
            c = a + nv
            d = c + 1
            if defect_flat.intersection((a, b, c, d)):
                continue
            faces.append((a, c, d))
            faces.append((a, d, b))
    return ProjectedMesh(nu=nu, nv=nv, vertices=verts, faces=faces, defects=defects)


def export_obj(mesh: ProjectedMesh) -> bytes:
    """Serialize a projected mesh as OBJ text (1-based face indices)."""
    if mesh.vertices.size == 0:
        raise EmptyGrid("no vertices to export")
    lines = []
    for x, y, z in mesh.vertices:
        lines.append(f"v {x:.17g} {y:.17g} {z:.17g}")
    for a, b, c in mesh.faces:
        lines.append(f"f {a + 1} {b + 1} {c + 1}")
    return ("\n".join(lines) + "\n").encode("ascii")


CSV_COLUMNS = ("u", "v", "x1", "y1", "x2", "y2", "N1", "N2", "N3", "angle")


def export_csv(grid: SurfaceGrid) -> bytes:
    """Serialize a sampled grid as CSV with the fixed column order."""
    nu, nv = grid.shape
    if nu == 0 or nv == 0:
        raise EmptyGrid("no samples to export")
    lines = [",".join(CSV_COLUMNS)]
    for i in range(nu):
        for j in range(nv):
            x1, y1, x2, y2 = grid.positions[i, j]
            n1, n2, n3 = grid.normals[i, j]
            row = (grid.us[i], grid.vs[j], x1, y1, x2, y2, n1, n2, n3, grid.angles[i, j])
            lines.append(",".join(f"{val:.17g}" for val in row))
    return ("\n".join(lines) + "\n").encode("ascii")
