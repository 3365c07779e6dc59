"""Euclidean simplex predicates and quality measures.

Conventions used throughout the toolkit:

* a simplex is an array of shape (k+1, d) of vertex coordinates,
  k in {1, 2, 3}, d in {2, 3};
* all angles are radians, never degrees;
* a simplex counts as degenerate when its normalized volume
  vol / diam**k falls below ``DEGENERACY_TOL`` (scale free).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSimplex

DEGENERACY_TOL = 1e-12

# f = r/R cannot exceed these (attained by the regular simplex)
MAX_FATNESS = {2: 0.5, 3: 1.0 / 3.0}

TET_EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def as_coords(simplex_coords):
    a = np.asarray(simplex_coords, dtype=float)
    if a.ndim != 2 or a.shape[0] < 2 or a.shape[1] not in (2, 3):
        raise ValueError(f"expected (k+1, d) coordinates, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("simplex coordinates must be finite")
    return a


def diameter(coords):
    """Largest pairwise vertex distance."""
    a = np.asarray(coords, dtype=float)
    diff = a[:, None, :] - a[None, :, :]
    return float(np.sqrt((diff * diff).sum(-1)).max())


def triangle_area(coords):
    a = np.asarray(coords, dtype=float)
    u = a[1] - a[0]
    v = a[2] - a[0]
    if a.shape[1] == 2:
        return 0.5 * abs(u[0] * v[1] - u[1] * v[0])
    return 0.5 * float(np.linalg.norm(np.cross(u, v)))


def tet_volume(coords):
    """Signed volume of a tetrahedron (positive for right-handed order)."""
    a = np.asarray(coords, dtype=float)
    return float(np.linalg.det(a[1:] - a[0])) / 6.0


def normalized_measure(coords):
    """Volume over diam**k; the scale-free degeneracy gauge."""
    a = as_coords(coords)
    k = a.shape[0] - 1
    d = diameter(a)
    if d == 0.0:
        return 0.0
    if k == 1:
        return 1.0
    if k == 2:
        return triangle_area(a) / d**2
    return abs(tet_volume(a)) / d**3


def is_degenerate(coords, tol=DEGENERACY_TOL):
    return normalized_measure(coords) < tol


def _require_nondegenerate(coords):
    if is_degenerate(coords):
        raise DegenerateSimplex(
            f"normalized measure below {DEGENERACY_TOL:g} for simplex\n{np.asarray(coords)}"
        )


def circumradius_inradius(simplex_coords):
    """(R, r): circumradius and inradius of a triangle or tetrahedron.

    Triangles use the closed forms R = abc/(4A), r = A/s; tetrahedra use
    the circumcenter linear system and r = 3V / (total face area).
    Raises DegenerateSimplex below the volume tolerance.
    """
    a = as_coords(simplex_coords)
    _require_nondegenerate(a)
    k = a.shape[0] - 1
    if k == 2:
        area = triangle_area(a)
        sides = np.array(
            [
                np.linalg.norm(a[1] - a[2]),
                np.linalg.norm(a[2] - a[0]),
                np.linalg.norm(a[0] - a[1]),
            ]
        )
        R = sides.prod() / (4.0 * area)
        r = area / (0.5 * sides.sum())
        return float(R), float(r)
    if k == 3:
        if a.shape[1] != 3:
            raise ValueError("tetrahedron requires 3D coordinates")
        # circumcenter c solves 2 (v_i - v_0) . c = |v_i|^2 - |v_0|^2
        m = 2.0 * (a[1:] - a[0])
        rhs = (a[1:] ** 2).sum(1) - (a[0] ** 2).sum()
        center = np.linalg.solve(m, rhs)
        R = float(np.linalg.norm(a[0] - center))
        vol = abs(tet_volume(a))
        faces = [a[[1, 2, 3]], a[[0, 2, 3]], a[[0, 1, 3]], a[[0, 1, 2]]]
        total_area = sum(triangle_area(f) for f in faces)
        r = 3.0 * vol / total_area
        return R, float(r)
    raise ValueError(f"quality measures are defined for k in {{2, 3}}, got k={k}")


def fatness(simplex_coords):
    """r/R for a triangle or tetrahedron; 0 for degenerate input.

    Total function: never raises on degenerate simplices.
    """
    a = as_coords(simplex_coords)
    if a.shape[0] - 1 == 1:
        return 1.0 if diameter(a) > 0 else 0.0
    if is_degenerate(a):
        return 0.0
    R, r = circumradius_inradius(a)
    return r / R


def triangle_angles(tri_coords):
    """The three interior angles, in vertex order."""
    a = as_coords(tri_coords)
    _require_nondegenerate(a)
    out = np.empty(3)
    for i in range(3):
        u = a[(i + 1) % 3] - a[i]
        v = a[(i + 2) % 3] - a[i]
        c = np.dot(u, v) / (np.linalg.norm(u) * np.linalg.norm(v))
        out[i] = np.arccos(np.clip(c, -1.0, 1.0))
    return out


def min_angle(tri_coords):
    """Smallest interior angle of a nondegenerate triangle."""
    return float(triangle_angles(tri_coords).min())


def dihedral_angles(tet_coords):
    """Dihedral angle at each of the six edges of a tetrahedron.

    Edge order follows ``TET_EDGES``; every angle lies in (0, pi).
    Each angle is measured between the in-face directions orthogonal
    to the edge, which avoids normal-orientation bookkeeping.
    """
    a = as_coords(tet_coords)
    if a.shape != (4, 3):
        raise ValueError("expected a tetrahedron in 3D")
    _require_nondegenerate(a)
    out = np.empty(6)
    for idx, (i, j) in enumerate(TET_EDGES):
        others = [m for m in range(4) if m not in (i, j)]
        e = a[j] - a[i]
        e = e / np.linalg.norm(e)
        w1 = a[others[0]] - a[i]
        w2 = a[others[1]] - a[i]
        w1 = w1 - np.dot(w1, e) * e
        w2 = w2 - np.dot(w2, e) * e
        c = np.dot(w1, w2) / (np.linalg.norm(w1) * np.linalg.norm(w2))
        out[idx] = np.arccos(np.clip(c, -1.0, 1.0))
    return out


def orientation_sign(tet_coords):
    """Sign of det(v1-v0, v2-v0, v3-v0); 0 when coplanar within tolerance.

    Total function: coplanarity is judged by the same scale-free
    tolerance as degeneracy, so no exception is raised.
    """
    a = as_coords(tet_coords)
    if a.shape != (4, 3):
        raise ValueError("expected a tetrahedron in 3D")
    det = np.linalg.det(a[1:] - a[0])
    d = diameter(a)
    if d == 0.0 or abs(det) / d**3 < DEGENERACY_TOL:
        return 0
    return 1 if det > 0 else -1


@dataclass(frozen=True)
class FatnessRecord:
    """Quality summary of one simplex: radii, ratio and angle floors."""

    inradius: float
    circumradius: float
    fatness: float
    min_planar_angle: float
    min_dihedral: float | None = None

    def __post_init__(self):
        if self.circumradius < self.inradius:
            raise ValueError("inradius exceeds circumradius")


def simplex_quality(simplex_coords):
    """Full FatnessRecord for a triangle or tetrahedron."""
    a = as_coords(simplex_coords)
    R, r = circumradius_inradius(a)
    if a.shape[0] == 3:
        return FatnessRecord(r, R, r / R, min_angle(a))
    faces = [a[[1, 2, 3]], a[[0, 2, 3]], a[[0, 1, 3]], a[[0, 1, 2]]]
    min_planar = min(min_angle(f) for f in faces)
    return FatnessRecord(r, R, r / R, min_planar, float(dihedral_angles(a).min()))


# ---------------------------------------------------------------------------
# batch versions, used by reports and statistics on whole meshes


def batch_fatness(vertices, cells):
    """Fatness of every cell of a mesh, vectorized.

    vertices: (n, d) float array; cells: (m, k+1) int array with k in {2, 3}.
    Degenerate cells get fatness 0.
    """
    v = np.asarray(vertices, dtype=float)
    c = np.asarray(cells, dtype=int)
    if c.size == 0:
        return np.zeros(0)
    pts = v[c]  # (m, k+1, d)
    k = c.shape[1] - 1
    if k == 2:
        return _batch_fatness_tri(pts)
    if k == 3:
        return _batch_fatness_tet(pts)
    raise ValueError(f"batch fatness is defined for k in {{2, 3}}, got k={k}")


def _batch_fatness_tri(pts):
    a = np.linalg.norm(pts[:, 1] - pts[:, 2], axis=1)
    b = np.linalg.norm(pts[:, 2] - pts[:, 0], axis=1)
    c = np.linalg.norm(pts[:, 0] - pts[:, 1], axis=1)
    u = pts[:, 1] - pts[:, 0]
    v = pts[:, 2] - pts[:, 0]
    if pts.shape[2] == 2:
        area = 0.5 * np.abs(u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0])
    else:
        area = 0.5 * np.linalg.norm(np.cross(u, v), axis=1)
    diam = np.maximum(np.maximum(a, b), c)
    out = np.zeros(len(pts))
    ok = (diam > 0) & (area / np.where(diam > 0, diam, 1.0) ** 2 >= DEGENERACY_TOL)
    s = 0.5 * (a + b + c)
    R = np.where(ok, a * b * c / np.where(area > 0, 4 * area, 1.0), np.inf)
    r = np.where(ok, area / np.where(s > 0, s, 1.0), 0.0)
    out[ok] = (r / R)[ok]
    return out


def _batch_fatness_tet(pts):
    e = pts[:, 1:] - pts[:, :1]  # (m, 3, 3)
    vol = np.abs(np.linalg.det(e)) / 6.0
    diff = pts[:, :, None, :] - pts[:, None, :, :]
    diam = np.sqrt((diff * diff).sum(-1)).max((1, 2))
    ok = (diam > 0) & (vol / np.where(diam > 0, diam, 1.0) ** 3 >= DEGENERACY_TOL)
    out = np.zeros(len(pts))
    if not ok.any():
        return out
    p = pts[ok]
    m = 2.0 * (p[:, 1:] - p[:, :1])
    rhs = (p[:, 1:] ** 2).sum(2) - (p[:, :1] ** 2).sum(2)
    centers = np.linalg.solve(m, rhs[..., None])[..., 0]
    R = np.linalg.norm(p[:, 0] - centers, axis=1)
    areas = np.zeros(len(p))
    for f in ((1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2)):
        u = p[:, f[1]] - p[:, f[0]]
        w = p[:, f[2]] - p[:, f[0]]
        areas += 0.5 * np.linalg.norm(np.cross(u, w), axis=1)
    vols = np.abs(np.linalg.det(p[:, 1:] - p[:, :1])) / 6.0
    r = 3.0 * vols / areas
    out[ok] = r / R
    return out
