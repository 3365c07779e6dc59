"""Vectorized proper-adjacency checks for candidate cell pairs.

Each pair of cells is classified by how many vertices it shares and the
whole category is decided with batched numpy arithmetic; rows whose float
result is too close to a tie fall back to the exact scalar predicates.
"""

from __future__ import annotations

import numpy as np

from . import predicates

_EPS = 1e-12
_ANGLE_TOL = 1e-9
_TWO_PI = 2.0 * np.pi


def improper_pairs(vertices, cells, pairs, dim):
    """Return the subset of candidate ``pairs`` that intersect improperly."""
    if len(pairs) == 0:
        return []
    cats = {0: [], 1: [], 2: [], 3: []}
    cell_sets = [frozenset(c.tolist()) for c in cells]
    for i, j in pairs:
        shared = cell_sets[i] & cell_sets[j]
        if len(shared) == dim + 1:
            continue  # duplicate, reported separately
        cats[len(shared)].append((i, j, sorted(shared)))
    bad = []
    if dim == 3:
        bad += _facet_sharing_3d(vertices, cells, cats[3])
        bad += _edge_sharing_3d(vertices, cells, cats[2])
        bad += _vertex_sharing_3d(vertices, cells, cats[1])
        bad += _disjoint_pairs(vertices, cells, cats[0], dim)
    else:
        bad += _edge_sharing_2d(vertices, cells, cats[2])
        bad += _vertex_sharing_2d(vertices, cells, cats[1])
        bad += _disjoint_pairs(vertices, cells, cats[0], dim)
    return bad


def _roles(cells, rows, n_shared):
    """Split each pair row into (shared..., rest_a..., rest_b...) id columns."""
    out = []
    for i, j, shared in rows:
        rest_a = [v for v in cells[i] if v not in shared]
        rest_b = [v for v in cells[j] if v not in shared]
        out.append(shared + rest_a + rest_b)
    return np.array(out, dtype=np.int64)


# ---------------------------------------------------------------------------
# 3D categories


def _facet_sharing_3d(vertices, cells, rows):
    if not rows:
        return []
    ids = _roles(cells, rows, 3)  # f0 f1 f2 a b
    f0 = vertices[ids[:, 0]]
    u = vertices[ids[:, 1]] - f0
    v = vertices[ids[:, 2]] - f0
    n = np.cross(u, v)
    sa = np.einsum("ij,ij->i", n, vertices[ids[:, 3]] - f0)
    sb = np.einsum("ij,ij->i", n, vertices[ids[:, 4]] - f0)
    scale = np.linalg.norm(n, axis=1) * (
        np.linalg.norm(vertices[ids[:, 3]] - f0, axis=1)
        + np.linalg.norm(vertices[ids[:, 4]] - f0, axis=1)
    ) + 1e-300
    decisive = (np.abs(sa) > _EPS * scale) & (np.abs(sb) > _EPS * scale)
    proper = decisive & (sa * sb < 0)
    bad = []
    for k, (i, j, shared) in enumerate(rows):
        if proper[k]:
            continue
        if decisive[k]:
            bad.append((i, j))
            continue
        f = [vertices[s] for s in shared]
        s1 = predicates.orient3d(f[0], f[1], f[2], vertices[ids[k, 3]])
        s2 = predicates.orient3d(f[0], f[1], f[2], vertices[ids[k, 4]])
        if not s1 * s2 < 0:
            bad.append((i, j))
    return bad


def _arc_of(u1, u2):
    t1 = np.arctan2(u1[:, 1], u1[:, 0])
    t2 = np.arctan2(u2[:, 1], u2[:, 0])
    d = np.mod(t2 - t1, _TWO_PI)
    start = np.where(d <= np.pi, t1, t2)
    width = np.where(d <= np.pi, d, _TWO_PI - d)
    return start, width


def _arc_clearance_vec(a, wa, b, wb):
    d1 = np.mod(b - a, _TWO_PI)
    d2 = np.mod(a - b, _TWO_PI)
    overlap1 = d1 <= wa
    overlap2 = d2 <= wb
    depth = np.zeros_like(a)
    depth = np.where(overlap1, np.minimum(wa - d1, wb), depth)
    depth = np.maximum(depth, np.where(overlap2, np.minimum(wb - d2, wa), 0.0))
    gap = np.minimum(d1 - wa, d2 - wb)
    return np.where(overlap1 | overlap2, -depth, gap)


def _edge_sharing_3d(vertices, cells, rows):
    if not rows:
        return []
    ids = _roles(cells, rows, 2)  # p q a1 a2 b1 b2
    p = vertices[ids[:, 0]]
    e = vertices[ids[:, 1]] - p
    en = e / np.linalg.norm(e, axis=1, keepdims=True)
    pivot = np.zeros_like(en)
    pivot[np.arange(len(en)), np.argmin(np.abs(en), axis=1)] = 1.0
    n1 = np.cross(en, pivot)
    n1 /= np.linalg.norm(n1, axis=1, keepdims=True)
    n2 = np.cross(en, n1)

    def proj(col):
        w = vertices[ids[:, col]] - p
        return np.stack([np.einsum("ij,ij->i", w, n1), np.einsum("ij,ij->i", w, n2)], 1)

    a1, a2, b1, b2 = proj(2), proj(3), proj(4), proj(5)
    sa, wa = _arc_of(a1, a2)
    sb, wb = _arc_of(b1, b2)
    clearance = _arc_clearance_vec(sa, wa, sb, wb)
    bad = []
    for k, (i, j, shared) in enumerate(rows):
        if clearance[k] > _ANGLE_TOL:
            continue
        if clearance[k] < -_ANGLE_TOL:
            bad.append((i, j))
            continue
        pp = vertices[shared[0]]
        ee = vertices[shared[1]] - pp
        a_dirs = [vertices[v] - pp for v in ids[k, 2:4]]
        b_dirs = [vertices[v] - pp for v in ids[k, 4:6]]
        try:
            if predicates.wedges_share_ray(ee, a_dirs, b_dirs):
                bad.append((i, j))
        except ValueError:
            bad.append((i, j))
    return bad


def _vertex_sharing_3d(vertices, cells, rows):
    if not rows:
        return []
    ids = _roles(cells, rows, 1)  # v a1 a2 a3 b1 b2 b3
    p = vertices[ids[:, 0]]
    ga = np.stack([vertices[ids[:, c]] - p for c in (1, 2, 3)], axis=1)
    gb = np.stack([vertices[ids[:, c]] - p for c in (4, 5, 6)], axis=1)
    ga = ga / (np.linalg.norm(ga, axis=2, keepdims=True) + 1e-300)
    gb = gb / (np.linalg.norm(gb, axis=2, keepdims=True) + 1e-300)
    allg = np.concatenate([ga, gb], axis=1)  # (n, 6, 3)
    # candidate separating axes: all pairwise cross products
    pairs = [(i, j) for i in range(6) for j in range(i + 1, 6)]
    axes = np.stack(
        [np.cross(allg[:, i], allg[:, j]) for i, j in pairs], axis=1
    )  # (n, 15, 3)
    norms = np.linalg.norm(axes, axis=2, keepdims=True)
    axes = axes / (norms + 1e-300)
    pa = np.einsum("nak,ngk->nag", axes, ga)
    pb = np.einsum("nak,ngk->nag", axes, gb)
    usable = norms[..., 0] > 1e-9
    amax, amin = pa.max(2), pa.min(2)
    bmax, bmin = pb.max(2), pb.min(2)
    sep_pos = (amax < -_ANGLE_TOL) & (bmin > _ANGLE_TOL) & usable
    sep_neg = (bmax < -_ANGLE_TOL) & (amin > _ANGLE_TOL) & usable
    proper = (sep_pos | sep_neg).any(1)
    # overlap certificate: a generator strictly inside the other cone
    improper = np.zeros(len(rows), dtype=bool)
    for g_host, g_probe in ((ga, gb), (gb, ga)):
        m = np.transpose(g_host, (0, 2, 1))  # columns = generators
        det = np.linalg.det(m)
        solvable = np.abs(det) > 1e-12
        if solvable.any():
            sol = np.linalg.solve(
                m[solvable], np.transpose(g_probe[solvable], (0, 2, 1))
            )
            inside = (sol > _ANGLE_TOL).all(1).any(1)
            idxs = np.flatnonzero(solvable)
            improper[idxs[inside]] = True
    # touching separation: cones on both sides of a plane, contact decided by
    # comparing the in-plane sectors of the touching generators
    touch_pos = (amax <= _ANGLE_TOL) & (bmin >= -_ANGLE_TOL) & usable
    touch_neg = (bmax <= _ANGLE_TOL) & (amin >= -_ANGLE_TOL) & usable
    undecided = np.flatnonzero(~proper & ~improper)
    decided_proper = np.zeros(len(rows), dtype=bool)
    for r in undecided:
        verdict = None
        for k in np.flatnonzero(touch_pos[r] | touch_neg[r]):
            verdict = _touching_plane_verdict(axes[r, k], ga[r], gb[r], pa[r, k], pb[r, k])
            if verdict is not None:
                break
        if verdict is True:
            decided_proper[r] = True
        elif verdict is False:
            improper[r] = True
    bad = []
    for k, (i, j, shared) in enumerate(rows):
        if (proper[k] or decided_proper[k]) and not improper[k]:
            continue
        if improper[k]:
            bad.append((i, j))
            continue
        pp = vertices[shared[0]]
        a_gens = [vertices[v] - pp for v in ids[k, 1:4]]
        b_gens = [vertices[v] - pp for v in ids[k, 4:7]]
        if predicates.cones_share_ray(a_gens, b_gens):
            bad.append((i, j))
    return bad


def _touching_plane_verdict(n, ga, gb, dots_a, dots_b):
    """Decide a vertex-sharing pair via a plane that both cones touch.

    Both cones lie (weakly) on opposite sides of the plane with normal n;
    any shared ray must lie in the plane, so compare the in-plane sectors
    spanned by the touching generators.  Returns True (proper), False
    (improper) or None (ambiguous).
    """
    ta = np.abs(dots_a) <= _ANGLE_TOL
    tb = np.abs(dots_b) <= _ANGLE_TOL
    na, nb = int(ta.sum()), int(tb.sum())
    if na == 3 or nb == 3:
        return None  # degenerate flat cone
    if na == 0 or nb == 0:
        # contact possible on one side only: intersection is the apex
        return True
    pivot = np.zeros(3)
    pivot[int(np.argmin(np.abs(n)))] = 1.0
    b1 = np.cross(n, pivot)
    b1 /= np.linalg.norm(b1)
    b2 = np.cross(n, b1)

    def arcs(gens, mask):
        sel = gens[mask]
        ang = np.arctan2(sel @ b2, sel @ b1)
        if len(sel) == 1:
            return float(ang[0]), 0.0
        d = (float(ang[1]) - float(ang[0])) % _TWO_PI
        if d <= np.pi:
            return float(ang[0]), d
        return float(ang[1]), _TWO_PI - d

    sa, wa = arcs(ga, ta)
    sb, wb = arcs(gb, tb)
    clearance = _arc_clearance(sa, wa, sb, wb)
    if clearance > _ANGLE_TOL:
        return True
    if clearance < -_ANGLE_TOL:
        return False
    return None


def _arc_clearance(a, wa, b, wb):
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


def _disjoint_pairs(vertices, cells, rows, dim):
    if not rows:
        return []
    k = dim + 1
    ids = np.array([[*cells[i], *cells[j]] for i, j, _ in rows], dtype=np.int64)
    ta = vertices[ids[:, :k]].astype(float)
    tb = vertices[ids[:, k:]].astype(float)
    if dim == 3:
        axes = _tet_axes_vec(ta, tb)
    else:
        axes = _tri_axes_vec(ta, tb)
    pa = np.einsum("nak,nvk->nav", axes, ta)
    pb = np.einsum("nak,nvk->nav", axes, tb)
    gap = np.maximum(pb.min(2) - pa.max(2), pa.min(2) - pb.max(2))
    scale = np.maximum(np.abs(pa).max(2), np.abs(pb).max(2)) + 1e-300
    sep = (gap > _EPS * scale).any(1)
    overlap_all = (gap < -_EPS * scale).all(1)
    bad = []
    for r, (i, j, _) in enumerate(rows):
        if sep[r]:
            continue
        if overlap_all[r]:
            bad.append((i, j))
            continue
        if not predicates.strictly_separated(ta[r], tb[r]):
            bad.append((i, j))
    return bad


def _tet_axes_vec(ta, tb):
    faces = ((1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2))
    axes = []
    for t in (ta, tb):
        for f in faces:
            axes.append(np.cross(t[:, f[1]] - t[:, f[0]], t[:, f[2]] - t[:, f[0]]))
    edges = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
    ea = np.stack([ta[:, j] - ta[:, i] for i, j in edges], 1)
    eb = np.stack([tb[:, j] - tb[:, i] for i, j in edges], 1)
    cr = np.cross(ea[:, :, None, :], eb[:, None, :, :]).reshape(len(ta), 36, 3)
    return np.concatenate([np.stack(axes, 1), cr], axis=1)


def _tri_axes_vec(ta, tb):
    axes = []
    for t in (ta, tb):
        for i in range(3):
            e = t[:, (i + 1) % 3] - t[:, i]
            axes.append(np.stack([-e[:, 1], e[:, 0]], 1))
    return np.stack(axes, 1)


# ---------------------------------------------------------------------------
# 2D categories


def _edge_sharing_2d(vertices, cells, rows):
    if not rows:
        return []
    ids = _roles(cells, rows, 2)  # e0 e1 a b
    e0 = vertices[ids[:, 0]]
    e = vertices[ids[:, 1]] - e0
    wa = vertices[ids[:, 2]] - e0
    wb = vertices[ids[:, 3]] - e0
    sa = e[:, 0] * wa[:, 1] - e[:, 1] * wa[:, 0]
    sb = e[:, 0] * wb[:, 1] - e[:, 1] * wb[:, 0]
    scale = np.linalg.norm(e, axis=1) * (
        np.linalg.norm(wa, axis=1) + np.linalg.norm(wb, axis=1)
    ) + 1e-300
    decisive = (np.abs(sa) > _EPS * scale) & (np.abs(sb) > _EPS * scale)
    proper = decisive & (sa * sb < 0)
    bad = []
    for k, (i, j, shared) in enumerate(rows):
        if proper[k]:
            continue
        if decisive[k]:
            bad.append((i, j))
            continue
        p0, p1 = vertices[shared[0]], vertices[shared[1]]
        s1 = predicates.orient2d(p0, p1, vertices[ids[k, 2]])
        s2 = predicates.orient2d(p0, p1, vertices[ids[k, 3]])
        if not s1 * s2 < 0:
            bad.append((i, j))
    return bad


def _vertex_sharing_2d(vertices, cells, rows):
    if not rows:
        return []
    ids = _roles(cells, rows, 1)  # v a1 a2 b1 b2
    p = vertices[ids[:, 0]]
    a1 = vertices[ids[:, 1]] - p
    a2 = vertices[ids[:, 2]] - p
    b1 = vertices[ids[:, 3]] - p
    b2 = vertices[ids[:, 4]] - p
    sa, wa = _arc_of(a1, a2)
    sb, wb = _arc_of(b1, b2)
    clearance = _arc_clearance_vec(sa, wa, sb, wb)
    bad = []
    for k, (i, j, shared) in enumerate(rows):
        if clearance[k] > _ANGLE_TOL:
            continue
        if clearance[k] < -_ANGLE_TOL:
            bad.append((i, j))
            continue
        pp = vertices[shared[0]]
        a_dirs = [vertices[v] - pp for v in ids[k, 1:3]]
        b_dirs = [vertices[v] - pp for v in ids[k, 3:5]]
        try:
            if predicates.sectors_share_ray_2d(a_dirs, b_dirs):
                bad.append((i, j))
        except ValueError:
            bad.append((i, j))
    return bad
