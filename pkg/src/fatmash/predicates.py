"""Orientation and incidence predicates with an exact rational fallback.

Every float is an exact rational, so predicates evaluated with
``fractions.Fraction`` on float inputs are exact decisions for the given
coordinates.  The fast path computes in floats and only falls back to
rationals when the float result is too close to zero to trust.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

# Conservative relative filter: |det| above eps * magnitude is trusted.
_FILTER_EPS = 1e-12


def _frac_point(p):
    return tuple(Fraction(float(x)) for x in p)


def orient2d(a, b, c):
    """Sign of the CCW test for 2D points: +1 left turn, -1 right, 0 collinear."""
    ax, ay = float(a[0]), float(a[1])
    bx, by = float(b[0]), float(b[1])
    cx, cy = float(c[0]), float(c[1])
    det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    mag = abs((bx - ax) * (cy - ay)) + abs((by - ay) * (cx - ax))
    if abs(det) > _FILTER_EPS * mag:
        return 1 if det > 0 else -1
    return orient2d_exact(a, b, c)


def orient2d_exact(a, b, c):
    ax, ay = _frac_point(a)[:2]
    bx, by = _frac_point(b)[:2]
    cx, cy = _frac_point(c)[:2]
    det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (det > 0) - (det < 0)


def orient3d(a, b, c, d):
    """Sign of det(b-a, c-a, d-a): +1 positively oriented, 0 coplanar."""
    m = np.asarray([b, c, d], dtype=float) - np.asarray(a, dtype=float)
    det = float(np.linalg.det(m))
    mag = float(np.abs(m).max()) ** 3 * 6.0 + 1e-300
    if abs(det) > _FILTER_EPS * mag:
        return 1 if det > 0 else -1
    return orient3d_exact(a, b, c, d)


def orient3d_exact(a, b, c, d):
    (ax, ay, az) = _frac_point(a)
    (bx, by, bz) = _frac_point(b)
    (cx, cy, cz) = _frac_point(c)
    (dx, dy, dz) = _frac_point(d)
    b0, b1, b2 = bx - ax, by - ay, bz - az
    c0, c1, c2 = cx - ax, cy - ay, cz - az
    d0, d1, d2 = dx - ax, dy - ay, dz - az
    det = (
        b0 * (c1 * d2 - c2 * d1)
        - b1 * (c0 * d2 - c2 * d0)
        + b2 * (c0 * d1 - c1 * d0)
    )
    return (det > 0) - (det < 0)


def point_in_triangle(p, tri):
    """Exact location of p against a 2D triangle: 1 inside, 0 on boundary, -1 outside."""
    a, b, c = tri
    if orient2d_exact(a, b, c) < 0:
        a, b, c = a, c, b
    s1 = orient2d(a, b, p)
    s2 = orient2d(b, c, p)
    s3 = orient2d(c, a, p)
    if s1 < 0 or s2 < 0 or s3 < 0:
        return -1
    if s1 == 0 or s2 == 0 or s3 == 0:
        return 0
    return 1


def point_in_tet(p, tet):
    """Exact location of p against a tetrahedron: 1 inside, 0 on boundary, -1 outside."""
    a, b, c, d = tet
    if orient3d_exact(a, b, c, d) < 0:
        a, b, c, d = a, b, d, c
    signs = [
        orient3d(a, b, c, p),
        orient3d(a, d, b, p),
        orient3d(b, d, c, p),
        orient3d(a, c, d, p),
    ]
    if any(s < 0 for s in signs):
        return -1
    if any(s == 0 for s in signs):
        return 0
    return 1


def segments_cross(p1, p2, q1, q2):
    """True when open segments (p1,p2) and (q1,q2) cross in one interior point (2D)."""
    d1 = orient2d(q1, q2, p1)
    d2 = orient2d(q1, q2, p2)
    d3 = orient2d(p1, p2, q1)
    d4 = orient2d(p1, p2, q2)
    return d1 * d2 < 0 and d3 * d4 < 0


def segment_crossing_param(p1, p2, q1, q2):
    """Parameter t on (p1, p2) of the crossing with line (q1, q2).

    Caller guarantees the segments are not parallel.  Computed in a fixed
    canonical orientation so both owners of a shared edge get the same bits.
    """
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    q1 = np.asarray(q1, dtype=float)
    q2 = np.asarray(q2, dtype=float)
    d = p2 - p1
    e = q2 - q1
    denom = d[0] * e[1] - d[1] * e[0]
    t = ((q1[0] - p1[0]) * e[1] - (q1[1] - p1[1]) * e[0]) / denom
    return float(t)


# ---------------------------------------------------------------------------
# separating-axis tests between convex simplices (used by complex validation)


def _axes_2d(tri):
    t = np.asarray(tri, dtype=float)
    out = []
    for i in range(3):
        e = t[(i + 1) % 3] - t[i]
        out.append(np.array([-e[1], e[0]]))
    return out


def triangles_interiors_disjoint(t1, t2):
    """True when the open triangles do not intersect (2D SAT, float filtered).

    Falls back to exact arithmetic when a projection gap is ambiguous.
    """
    a = np.asarray(t1, dtype=float)
    b = np.asarray(t2, dtype=float)
    exact_needed = False
    for axis in _axes_2d(a) + _axes_2d(b):
        pa = a @ axis
        pb = b @ axis
        lo_a, hi_a = pa.min(), pa.max()
        lo_b, hi_b = pb.min(), pb.max()
        gap = max(lo_b - hi_a, lo_a - hi_b)
        scale = max(abs(pa).max(), abs(pb).max(), 1e-300)
        if gap > _FILTER_EPS * scale:
            return True
        if gap > -_FILTER_EPS * scale:
            exact_needed = True
    if not exact_needed:
        return False
    return _tri_sat_exact(a, b)


def tets_interiors_disjoint(t1, t2):
    """True when the open tetrahedra do not intersect (3D SAT, float filtered)."""
    a = np.asarray(t1, dtype=float)
    b = np.asarray(t2, dtype=float)
    axes = _tet_axes(a, b)
    exact_needed = False
    for axis in axes:
        n = np.linalg.norm(axis)
        if n == 0.0:
            continue
        pa = a @ axis
        pb = b @ axis
        gap = max(pb.min() - pa.max(), pa.min() - pb.max())
        scale = max(np.abs(pa).max(), np.abs(pb).max(), 1e-300)
        if gap > _FILTER_EPS * scale:
            return True
        if gap > -_FILTER_EPS * scale:
            exact_needed = True
    if not exact_needed:
        return False
    return _tet_sat_exact(a, b)


def _tet_axes(a, b):
    axes = []
    for t in (a, b):
        for f in ((1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2)):
            n = np.cross(t[f[1]] - t[f[0]], t[f[2]] - t[f[0]])
            axes.append(n)
    ea = [a[j] - a[i] for i, j in ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))]
    eb = [b[j] - b[i] for i, j in ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))]
    for u in ea:
        for v in eb:
            axes.append(np.cross(u, v))
    return axes


# ---------------------------------------------------------------------------
# filtered sign helpers


def sign_det3(u, v, w):
    """Sign of det[u; v; w] for 3-vectors, float filtered with exact fallback."""
    m = np.array([u, v, w], dtype=float)
    det = float(np.linalg.det(m))
    mag = float(np.abs(m).max()) ** 3 * 6.0 + 1e-300
    if abs(det) > _FILTER_EPS * mag:
        return 1 if det > 0 else -1
    fu, fv, fw = (_frac_point(x) for x in (u, v, w))
    d = (
        fu[0] * (fv[1] * fw[2] - fv[2] * fw[1])
        - fu[1] * (fv[0] * fw[2] - fv[2] * fw[0])
        + fu[2] * (fv[0] * fw[1] - fv[1] * fw[0])
    )
    return (d > 0) - (d < 0)


def sign_cross2(u, v):
    """Sign of the 2D cross product u x v, float filtered."""
    det = float(u[0]) * float(v[1]) - float(u[1]) * float(v[0])
    mag = abs(float(u[0]) * float(v[1])) + abs(float(u[1]) * float(v[0])) + 1e-300
    if abs(det) > _FILTER_EPS * mag:
        return 1 if det > 0 else -1
    fu = _frac_point(u)[:2]
    fv = _frac_point(v)[:2]
    d = fu[0] * fv[1] - fu[1] * fv[0]
    return (d > 0) - (d < 0)


def _sign_dot(u, v):
    s = float(np.dot(np.asarray(u, float), np.asarray(v, float)))
    mag = float(np.abs(u).max() * np.abs(v).max()) * len(u) + 1e-300
    if abs(s) > _FILTER_EPS * mag:
        return 1 if s > 0 else -1
    fu = _frac_point(u)
    fv = _frac_point(v)
    d = sum(x * y for x, y in zip(fu, fv))
    return (d > 0) - (d < 0)


def _quotient_dot_sign(e, x, y):
    """Sign of <x, y> after removing the e-component (scaled, exact-safe)."""
    e = np.asarray(e, float)
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    val = np.dot(e, e) * np.dot(x, y) - np.dot(x, e) * np.dot(y, e)
    mag = (
        abs(np.dot(e, e) * np.dot(x, y)) + abs(np.dot(x, e) * np.dot(y, e)) + 1e-300
    )
    if abs(val) > _FILTER_EPS * mag:
        return 1 if val > 0 else -1
    fe, fx, fy = (_frac_point(v) for v in (e, x, y))

    def fdot(a, b):
        return sum(p * q for p, q in zip(a, b))

    d = fdot(fe, fe) * fdot(fx, fy) - fdot(fx, fe) * fdot(fy, fe)
    return (d > 0) - (d < 0)


def ray_in_sector_2d(d, u1, u2):
    """Is direction d inside the closed 2D cone spanned by u1, u2 (angle < pi)?"""
    s = sign_cross2(u1, u2)
    if s == 0:
        raise ValueError("sector generators are collinear")
    if s < 0:
        u1, u2 = u2, u1
    c1 = sign_cross2(u1, d)
    c2 = sign_cross2(d, u2)
    if c1 > 0 and c2 > 0:
        return True
    if c1 == 0 and _sign_dot(d, u1) > 0:
        return True
    if c2 == 0 and _sign_dot(d, u2) > 0:
        return True
    return False


def sectors_share_ray_2d(a_dirs, b_dirs):
    """Do two 2D corner sectors (each spanning < pi) share a nonzero ray?"""
    a1, a2 = a_dirs
    b1, b2 = b_dirs
    return (
        ray_in_sector_2d(b1, a1, a2)
        or ray_in_sector_2d(b2, a1, a2)
        or ray_in_sector_2d(a1, b1, b2)
        or ray_in_sector_2d(a2, b1, b2)
    )


def _ray_in_wedge(e, d, u1, u2):
    """Sector test in the quotient modulo direction e (3D wedge around an edge)."""
    s = sign_det3(e, u1, u2)
    if s == 0:
        raise ValueError("wedge generators are coplanar with the edge")
    if s < 0:
        u1, u2 = u2, u1
    c1 = sign_det3(e, u1, d)
    c2 = sign_det3(e, d, u2)
    if c1 > 0 and c2 > 0:
        return True
    if c1 == 0 and _quotient_dot_sign(e, d, u1) > 0:
        return True
    if c2 == 0 and _quotient_dot_sign(e, d, u2) > 0:
        return True
    return False


def wedges_share_ray(e, a_dirs, b_dirs):
    """Do the wedges around shared edge direction e overlap off the edge line?

    a_dirs/b_dirs are the two off-edge vertex offsets of each cell from a
    point on the edge.
    """
    a1, a2 = a_dirs
    b1, b2 = b_dirs
    return (
        _ray_in_wedge(e, b1, a1, a2)
        or _ray_in_wedge(e, b2, a1, a2)
        or _ray_in_wedge(e, a1, b1, b2)
        or _ray_in_wedge(e, a2, b1, b2)
    )


def _frac_solve3(cols, rhs):
    """Exact Cramer solve of [c1 c2 c3] x = rhs; returns None when singular."""
    c1, c2, c3 = (_frac_point(c) for c in cols)
    r = _frac_point(rhs)

    def det(a, b, c):
        return (
            a[0] * (b[1] * c[2] - b[2] * c[1])
            - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0])
        )

    d = det(c1, c2, c3)
    if d == 0:
        return None
    return (det(r, c2, c3) / d, det(c1, r, c3) / d, det(c1, c2, r) / d)


def _ray_in_cone3(d, gens):
    sol = _frac_solve3(gens, d)
    if sol is None:
        return False
    return all(x >= 0 for x in sol)


def _in_planar_sector(n, d, u1, u2):
    """d, u1, u2 all orthogonal to n: is d in the closed cone(u1, u2)?"""
    s = sign_det3(n, u1, u2)
    if s == 0:
        # u1, u2 parallel: cone degenerates to a ray (or half-plane); treat
        # as ray u1 and require d parallel with positive dot
        return sign_det3(n, u1, d) == 0 and _sign_dot(d, u1) > 0
    if s < 0:
        u1, u2 = u2, u1
    c1 = sign_det3(n, u1, d)
    c2 = sign_det3(n, d, u2)
    if c1 > 0 and c2 > 0:
        return True
    if c1 == 0 and _sign_dot(d, u1) > 0:
        return True
    if c2 == 0 and _sign_dot(d, u2) > 0:
        return True
    return False


def cones_share_ray(a_gens, b_gens):
    """Do two simplicial cones at a common apex share a nonzero ray?

    Generators are the three edge directions of each tetrahedron from the
    shared vertex.  Exact: generator-in-cone plus facet-facet crossings.
    """
    for d in b_gens:
        if _ray_in_cone3(d, a_gens):
            return True
    for d in a_gens:
        if _ray_in_cone3(d, b_gens):
            return True
    pairs = ((0, 1), (0, 2), (1, 2))
    for i, j in pairs:
        u1 = np.asarray(a_gens[i], float)
        u2 = np.asarray(a_gens[j], float)
        na = np.cross(u1, u2)
        for k, l in pairs:
            w1 = np.asarray(b_gens[k], float)
            w2 = np.asarray(b_gens[l], float)
            nb = np.cross(w1, w2)
            d = np.cross(na, nb)
            if np.abs(d).max() <= 1e-14 * (np.abs(na).max() * np.abs(nb).max() + 1e-300):
                # faces are (near) coplanar: sector overlap within the plane
                if _coplanar_sectors_share_ray(na, (u1, u2), (w1, w2)):
                    return True
                continue
            for dd in (d, -d):
                if _in_planar_sector(na, dd, u1, u2) and _in_planar_sector(
                    nb, dd, w1, w2
                ):
                    return True
    return False


def _coplanar_sectors_share_ray(n, a_dirs, b_dirs):
    u1, u2 = a_dirs
    w1, w2 = b_dirs
    return (
        _in_planar_sector(n, w1, u1, u2)
        or _in_planar_sector(n, w2, u1, u2)
        or _in_planar_sector(n, u1, w1, w2)
        or _in_planar_sector(n, u2, w1, w2)
    )


_TWO_PI = 2.0 * np.pi
_ANGLE_TOL = 1e-9


def _sector_arc(u1, u2):
    t1 = float(np.arctan2(u1[1], u1[0]))
    t2 = float(np.arctan2(u2[1], u2[0]))
    d = (t2 - t1) % _TWO_PI
    if d <= np.pi:
        return t1, d
    return t2, _TWO_PI - d


def _arc_clearance(a, wa, b, wb):
    """Signed angular clearance between two circular arcs (negative overlap)."""
    d1 = (b - a) % _TWO_PI
    d2 = (a - b) % _TWO_PI
    if d1 <= wa or d2 <= wb:
        depth = 0.0
        if d1 <= wa:
            depth = max(depth, min(wa - d1, wb))
        if d2 <= wb:
            depth = max(depth, min(wb - d2, wa))
        return -depth
    return min(d1 - wa, d2 - wb)


def sectors_disjoint_2d(a_dirs, b_dirs):
    """Do two 2D corner sectors meet only at the origin?  Float filtered."""
    arc_a = _sector_arc(*a_dirs)
    arc_b = _sector_arc(*b_dirs)
    clearance = _arc_clearance(*arc_a, *arc_b)
    if clearance > _ANGLE_TOL:
        return True
    if clearance < -_ANGLE_TOL:
        return False
    return not sectors_share_ray_2d(a_dirs, b_dirs)


def _quotient_basis(e):
    e = np.asarray(e, float)
    e = e / np.linalg.norm(e)
    pivot = np.zeros(3)
    pivot[int(np.argmin(np.abs(e)))] = 1.0
    n1 = np.cross(e, pivot)
    n1 /= np.linalg.norm(n1)
    n2 = np.cross(e, n1)
    return e, n1, n2


def wedges_disjoint(e, a_dirs, b_dirs):
    """Do the wedges around a shared edge meet only on the edge line?"""
    eu, n1, n2 = _quotient_basis(e)
    def proj(x):
        return np.array([np.dot(x, n1), np.dot(x, n2)])
    pa = [proj(np.asarray(x, float)) for x in a_dirs]
    pb = [proj(np.asarray(x, float)) for x in b_dirs]
    arc_a = _sector_arc(*pa)
    arc_b = _sector_arc(*pb)
    clearance = _arc_clearance(*arc_a, *arc_b)
    if clearance > _ANGLE_TOL:
        return True
    if clearance < -_ANGLE_TOL:
        return False
    return not wedges_share_ray(e, a_dirs, b_dirs)


def cones_disjoint(a_gens, b_gens):
    """Do two simplicial vertex cones meet only at the apex?  Float filtered."""
    ga = [np.asarray(g, float) for g in a_gens]
    gb = [np.asarray(g, float) for g in b_gens]
    ga = [g / np.linalg.norm(g) for g in ga]
    gb = [g / np.linalg.norm(g) for g in gb]
    axes = []
    allg = ga + gb
    for i in range(len(allg)):
        for j in range(i + 1, len(allg)):
            n = np.cross(allg[i], allg[j])
            norm = np.linalg.norm(n)
            if norm > 1e-12:
                axes.append(n / norm)
    for n in axes:
        pa = [np.dot(g, n) for g in ga]
        pb = [np.dot(g, n) for g in gb]
        if max(pa) < -_ANGLE_TOL and min(pb) > _ANGLE_TOL:
            return True
        if max(pb) < -_ANGLE_TOL and min(pa) > _ANGLE_TOL:
            return True
    return not cones_share_ray(a_gens, b_gens)


def strictly_separated(t1, t2):
    """True when the closed simplices have a strictly positive gap (SAT)."""
    a = np.asarray(t1, dtype=float)
    b = np.asarray(t2, dtype=float)
    if a.shape[1] == 2:
        axes = _axes_2d(a) + _axes_2d(b)
        exact = _tri_sat_strict_exact
    else:
        axes = _tet_axes(a, b)
        exact = _tet_sat_strict_exact
    ambiguous = False
    for axis in axes:
        pa = a @ axis
        pb = b @ axis
        gap = max(pb.min() - pa.max(), pa.min() - pb.max())
        scale = max(np.abs(pa).max(), np.abs(pb).max(), 1e-300)
        if gap > _FILTER_EPS * scale:
            return True
        if gap > -_FILTER_EPS * scale:
            ambiguous = True
    if not ambiguous:
        return False
    return exact(a, b)


def _strict_separates(fa, fb, ax):
    if all(x == 0 for x in ax):
        return False
    pa = [sum(x * y for x, y in zip(p, ax)) for p in fa]
    pb = [sum(x * y for x, y in zip(p, ax)) for p in fb]
    return min(pb) > max(pa) or min(pa) > max(pb)


def _tri_sat_strict_exact(a, b):
    fa = [_frac_point(p) for p in a]
    fb = [_frac_point(p) for p in b]
    for t in (fa, fb):
        for i in range(3):
            ex = t[(i + 1) % 3][0] - t[i][0]
            ey = t[(i + 1) % 3][1] - t[i][1]
            if _strict_separates(fa, fb, (-ey, ex)):
                return True
    return False


def _tet_sat_strict_exact(a, b):
    fa = [_frac_point(p) for p in a]
    fb = [_frac_point(p) for p in b]
    for t in (fa, fb):
        for f in ((1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2)):
            n = _frac_cross(_frac_sub(t[f[1]], t[f[0]]), _frac_sub(t[f[2]], t[f[0]]))
            if _strict_separates(fa, fb, n):
                return True
    edges = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
    ea = [_frac_sub(fa[j], fa[i]) for i, j in edges]
    eb = [_frac_sub(fb[j], fb[i]) for i, j in edges]
    for u in ea:
        for v in eb:
            if _strict_separates(fa, fb, _frac_cross(u, v)):
                return True
    return False


def _separates(fa, fb, ax):
    if all(x == 0 for x in ax):
        return False
    pa = [sum(x * y for x, y in zip(p, ax)) for p in fa]
    pb = [sum(x * y for x, y in zip(p, ax)) for p in fb]
    return min(pb) >= max(pa) or min(pa) >= max(pb)


def _tri_sat_exact(a, b):
    fa = [_frac_point(p) for p in a]
    fb = [_frac_point(p) for p in b]
    for t in (fa, fb):
        for i in range(3):
            ex = t[(i + 1) % 3][0] - t[i][0]
            ey = t[(i + 1) % 3][1] - t[i][1]
            if _separates(fa, fb, (-ey, ex)):
                return True
    return False


def _frac_cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _frac_sub(p, q):
    return tuple(x - y for x, y in zip(p, q))


def _tet_sat_exact(a, b):
    fa = [_frac_point(p) for p in a]
    fb = [_frac_point(p) for p in b]
    for t in (fa, fb):
        for f in ((1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2)):
            n = _frac_cross(_frac_sub(t[f[1]], t[f[0]]), _frac_sub(t[f[2]], t[f[0]]))
            if _separates(fa, fb, n):
                return True
    edges = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
    ea = [_frac_sub(fa[j], fa[i]) for i, j in edges]
    eb = [_frac_sub(fb[j], fb[i]) for i, j in edges]
    for u in ea:
        for v in eb:
            if _separates(fa, fb, _frac_cross(u, v)):
                return True
    return False
