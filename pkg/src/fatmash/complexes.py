"""Simplicial complex container, validity checking, subdivision and file I/O.

The canonical interchange format of the toolkit is a JSON document

    {"dim": k, "vertices": [[x, y, z], ...], "cells": [[i0, ..., ik], ...],
     "labels": {...}}

where ``labels`` may carry a per-cell list under ``"cells"`` and free-form
scene metadata under other keys.  OFF is supported as a secondary format.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import predicates
from .errors import InvalidComplex
from .geometry import orientation_sign

WELD_TOL = 1e-9


@dataclass(frozen=True)
class SimplicialComplex:
    """Immutable vertex/cell mesh of top dimension ``dim`` (2 or 3 mostly).

    ``vertices`` is (n, d) float, ``cells`` is (m, dim+1) int.  Operations
    return new complexes; nothing mutates in place.
    """

    vertices: np.ndarray
    cells: np.ndarray
    dim: int
    labels: dict = field(default_factory=dict)

    def __post_init__(self):
        v = np.ascontiguousarray(np.asarray(self.vertices, dtype=float))
        c = np.ascontiguousarray(np.asarray(self.cells, dtype=np.int64))
        if c.size == 0:
            c = c.reshape(0, self.dim + 1)
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "cells", c)
        if v.ndim != 2 or v.shape[1] not in (2, 3):
            raise ValueError(f"vertices must be (n, 2|3), got {v.shape}")
        if c.ndim != 2 or c.shape[1] != self.dim + 1:
            raise ValueError(f"cells must be (m, {self.dim + 1}), got {c.shape}")
        if c.size and (c.min() < 0 or c.max() >= len(v)):
            raise ValueError("cell index out of range")
        if c.size:
            for row in c:
                if len(set(row.tolist())) != len(row):
                    raise ValueError(f"cell {row} repeats a vertex id")

    @property
    def n_vertices(self):
        return len(self.vertices)

    @property
    def n_cells(self):
        return len(self.cells)

    def cell_coords(self, i):
        return self.vertices[self.cells[i]]

    def cell_label(self, i):
        per_cell = self.labels.get("cells")
        if per_cell is None:
            return None
        return per_cell[i]

    def facet_incidence(self):
        """Map sorted-facet-tuple -> list of incident cell indices."""
        inc = {}
        for ci, cell in enumerate(self.cells):
            for facet in combinations(sorted(cell.tolist()), self.dim):
                inc.setdefault(facet, []).append(ci)
        return inc

    def with_labels(self, **extra):
        labels = dict(self.labels)
        labels.update(extra)
        return SimplicialComplex(self.vertices, self.cells, self.dim, labels)

    def canonicalized(self):
        """Sort vertex ids in every cell, flipping to keep orientation positive.

        Applies to full-dimensional cells only (triangles with 2D
        coordinates, tetrahedra with 3D); other cells are just sorted.
        """
        cells = np.sort(self.cells, axis=1)
        full = self.vertices.shape[1] == self.dim
        if full and self.dim == 2:
            for row in cells:
                a, b, c = self.vertices[row]
                if predicates.orient2d(a, b, c) < 0:
                    row[1], row[2] = row[2], row[1]
        elif self.vertices.shape[1] == 3 and self.dim == 3:
            for row in cells:
                if orientation_sign(self.vertices[row]) < 0:
                    row[2], row[3] = row[3], row[2]
        return SimplicialComplex(self.vertices, cells, self.dim, dict(self.labels))

    def measure(self):
        """Total unsigned area (dim 2) or volume (dim 3)."""
        if self.n_cells == 0:
            return 0.0
        pts = self.vertices[self.cells]
        if self.dim == 2:
            u = pts[:, 1] - pts[:, 0]
            v = pts[:, 2] - pts[:, 0]
            if self.vertices.shape[1] == 2:
                return float(np.abs(u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0]).sum() / 2)
            return float(np.linalg.norm(np.cross(u, v), axis=1).sum() / 2)
        if self.dim == 3:
            return float(np.abs(np.linalg.det(pts[:, 1:] - pts[:, :1])).sum() / 6)
        if self.dim == 1:
            return float(np.linalg.norm(pts[:, 1] - pts[:, 0], axis=1).sum())
        raise ValueError(f"no measure for dim {self.dim}")

    def measure_exact(self):
        """Total measure as an exact rational (slow; meant for oracles)."""
        total = Fraction(0)
        for cell in self.cells:
            pts = [[Fraction(float(x)) for x in self.vertices[i]] for i in cell]
            if self.dim == 2 and self.vertices.shape[1] == 2:
                (ax, ay), (bx, by), (cx, cy) = pts
                total += abs((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))
            elif self.dim == 3:
                rows = [[p[i] - pts[0][i] for i in range(3)] for p in pts[1:]]
                det = (
                    rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
                    - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
                    + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0])
                )
                total += abs(det)
            else:
                raise ValueError("exact measure needs full-dimensional cells")
        return total / (2 if self.dim == 2 else 6)


@dataclass
class ValidityReport:
    """Outcome of ``validate``: violations as (cell_i, cell_j, kind) triples."""

    is_valid: bool
    violations: list

    def kinds(self):
        return sorted({v[2] for v in self.violations})


def empty_complex(dim, ambient=None):
    ambient = dim if ambient is None else ambient
    return SimplicialComplex(
        np.zeros((0, ambient)), np.zeros((0, dim + 1), dtype=np.int64), dim
    )


# ---------------------------------------------------------------------------
# validation


def _bbox_pairs(vertices, cells, pad=0.0):
    """Candidate overlapping cell pairs via a sweep over bounding boxes."""
    if len(cells) < 2:
        return np.zeros((0, 2), dtype=np.int64)
    pts = vertices[cells]
    lo = pts.min(axis=1) - pad
    hi = pts.max(axis=1) + pad
    order = np.argsort(lo[:, 0], kind="stable")
    lo_s = lo[order]
    hi_s = hi[order]
    out = []
    lo_x_sorted = lo_s[:, 0]
    for pos in range(len(order)):
        # cells whose x-interval can still overlap cell `pos`
        end = int(np.searchsorted(lo_x_sorted, hi_s[pos, 0], side="right"))
        if end <= pos + 1:
            continue
        cand = np.arange(pos + 1, end)
        ok = np.all(lo_s[cand, 1:] <= hi_s[pos, 1:], axis=1) & np.all(
            lo_s[pos, 1:] <= hi_s[cand, 1:], axis=1
        )
        for j in cand[ok]:
            a, b = order[pos], order[j]
            out.append((a, b) if a < b else (b, a))
    return np.array(out, dtype=np.int64).reshape(-1, 2)


def validate(complex_, check_orientation=None):
    """Check that the mesh is a simplicial complex.

    Verifies: no duplicated cells, every facet shared by at most two
    cells, pairwise intersections are common faces, and (for
    full-dimensional meshes) positive cell orientation when
    ``check_orientation`` is not disabled.  Predicates run in floats with
    an exact rational fallback, so desk-scale scenes are decided exactly.
    """
    violations = []
    cells = complex_.cells
    vertices = complex_.vertices
    seen = {}
    for i, cell in enumerate(cells):
        key = tuple(sorted(cell.tolist()))
        if key in seen:
            violations.append((seen[key], i, "duplicate"))
        else:
            seen[key] = i

    full_dim = vertices.shape[1] == complex_.dim
    if check_orientation is None:
        check_orientation = full_dim
    if check_orientation and full_dim:
        for i, cell in enumerate(cells):
            pts = vertices[cell]
            if complex_.dim == 2:
                s = predicates.orient2d(*pts)
            else:
                s = orientation_sign(pts)
            if s <= 0:
                violations.append((i, i, "inverted"))

    for facet, inc in complex_.facet_incidence().items():
        if len(inc) > 2:
            violations.append((inc[0], inc[1], "improper-intersection"))

    if full_dim and complex_.dim in (2, 3):
        from ._pairchecks import improper_pairs

        pairs = _bbox_pairs(vertices, cells)
        for i, j in improper_pairs(vertices, cells, pairs, complex_.dim):
            violations.append((int(i), int(j), "improper-intersection"))

    return ValidityReport(not violations, violations)


def require_valid(complex_, **kw):
    report = validate(complex_, **kw)
    if not report.is_valid:
        raise InvalidComplex(f"complex has violations: {report.violations[:5]}")
    return report


# ---------------------------------------------------------------------------
# boundary and subdivision


def boundary(complex_, validated=False):
    """Subcomplex of facets incident to exactly one cell.

    Vertex array is shared with the input, so vertex ids stay stable.
    """
    if not validated:
        require_valid(complex_, check_orientation=False)
    return boundary_unchecked(complex_)


def boundary_unchecked(complex_):
    facets = [
        facet
        for facet, inc in complex_.facet_incidence().items()
        if len(inc) == 1
    ]
    facets.sort()
    cells = np.array(facets, dtype=np.int64).reshape(len(facets), complex_.dim)
    return SimplicialComplex(complex_.vertices, cells, complex_.dim - 1)


def subdivide_barycentric(complex_, validated=False):
    """One barycentric subdivision: each k-cell becomes (k+1)! cells.

    New vertices sit at barycenters of all faces; chains of faces become
    cells.  The underlying point set is unchanged.
    """
    if not validated:
        require_valid(complex_, check_orientation=False)
    verts = [tuple(p) for p in complex_.vertices]
    face_id = {}

    def barycenter_id(face):
        key = tuple(sorted(face))
        if len(key) == 1:
            return key[0]
        if key not in face_id:
            face_id[key] = len(verts)
            verts.append(tuple(complex_.vertices[list(key)].mean(axis=0)))
        return face_id[key]

    new_cells = []
    k = complex_.dim
    for cell in complex_.cells:
        ids = cell.tolist()
        from itertools import permutations

        for perm in permutations(ids):
            chain = [barycenter_id(perm[: i + 1]) for i in range(k + 1)]
            new_cells.append(chain)
    # permutation chains double-count each cell only when chains coincide;
    # for distinct barycenter ids every chain is unique
    out = SimplicialComplex(
        np.array(verts, dtype=float), np.array(new_cells, dtype=np.int64), k
    )
    return out.canonicalized() if complex_.vertices.shape[1] == k else out


# ---------------------------------------------------------------------------
# welding and file I/O


def weld_vertices(vertices, cells, tol=WELD_TOL):
    """Merge vertices closer than tol; returns (vertices, cells, index_map).

    Deterministic: the surviving representative is the lowest index in
    each merge group (hash-grid neighborhood search).
    """
    v = np.asarray(vertices, dtype=float)
    if len(v) == 0:
        return v, np.asarray(cells, dtype=np.int64), np.zeros(0, dtype=np.int64)
    parent = np.arange(len(v))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            lo, hi = min(ri, rj), max(ri, rj)
            parent[hi] = lo

    grid = {}
    inv_tol = 1.0 / tol
    keys = np.floor(v * inv_tol).astype(np.int64)
    for i, key in enumerate(map(tuple, keys)):
        grid.setdefault(key, []).append(i)
    import itertools

    offsets = list(itertools.product((-1, 0, 1), repeat=v.shape[1]))
    for i, key in enumerate(map(tuple, keys)):
        for off in offsets:
            nb = tuple(k + o for k, o in zip(key, off))
            for j in grid.get(nb, ()):
                if j < i and np.linalg.norm(v[i] - v[j]) <= tol:
                    union(i, j)
    roots = np.array([find(i) for i in range(len(v))])
    unique_roots, new_index = np.unique(roots, return_inverse=True)
    new_vertices = v[unique_roots]
    new_cells = new_index[np.asarray(cells, dtype=np.int64)]
    return new_vertices, new_cells, new_index


def to_json_dict(complex_):
    return {
        "dim": int(complex_.dim),
        "vertices": [[float(x) for x in p] for p in complex_.vertices],
        "cells": [[int(i) for i in c] for c in complex_.cells],
        "labels": complex_.labels,
    }


def dumps_mesh(complex_):
    """Deterministic JSON serialization (sorted keys, repr floats)."""
    return json.dumps(to_json_dict(complex_), sort_keys=True, separators=(",", ":"))


def save_json(complex_, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_mesh(complex_))
        fh.write("\n")


def from_json_dict(doc, weld=True):
    dim = int(doc["dim"])
    vertices = np.array(doc["vertices"], dtype=float).reshape(-1, len(doc["vertices"][0]) if doc["vertices"] else 3)
    cells = np.array(doc["cells"], dtype=np.int64).reshape(-1, dim + 1)
    labels = doc.get("labels", {})
    if weld and len(vertices):
        vertices, cells, _ = weld_vertices(vertices, cells)
    return SimplicialComplex(vertices, cells, dim, labels)


def load_json(path, weld=True):
    with open(path, encoding="utf-8") as fh:
        return from_json_dict(json.load(fh), weld=weld)


def save_off(complex_, path):
    """OFF writer.  Surface meshes use the face block; volume meshes put
    tetrahedra in a CELLS extension block after the (empty) face list."""
    lines = ["OFF"]
    v = complex_.vertices
    pad = np.zeros((len(v), 3))
    pad[:, : v.shape[1]] = v
    if complex_.dim == 2:
        lines.append(f"{len(v)} {complex_.n_cells} 0")
        lines += [f"{float(p[0])!r} {float(p[1])!r} {float(p[2])!r}" for p in pad]
        lines += ["3 " + " ".join(map(str, c)) for c in complex_.cells]
    elif complex_.dim == 3:
        lines.append(f"{len(v)} 0 0")
        lines += [f"{float(p[0])!r} {float(p[1])!r} {float(p[2])!r}" for p in pad]
        lines.append(f"CELLS {complex_.n_cells}")
        lines += ["4 " + " ".join(map(str, c)) for c in complex_.cells]
    else:
        raise ValueError("OFF writer supports dim 2 and 3")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_off(path, weld=True):
    with open(path, encoding="utf-8") as fh:
        tokens = fh.read().split("\n")
    lines = [ln.strip() for ln in tokens if ln.strip() and not ln.startswith("#")]
    if lines[0] != "OFF":
        raise ValueError("not an OFF file")
    nv, nf, _ = (int(x) for x in lines[1].split())
    vertices = np.array(
        [[float(x) for x in ln.split()] for ln in lines[2 : 2 + nv]], dtype=float
    )
    pos = 2 + nv
    if nf > 0:
        cells = []
        for ln in lines[pos : pos + nf]:
            parts = [int(x) for x in ln.split()]
            if parts[0] != 3:
                raise ValueError("only triangular faces are supported")
            cells.append(parts[1:4])
        dim = 2
        cell_arr = np.array(cells, dtype=np.int64)
    else:
        if pos >= len(lines) or not lines[pos].startswith("CELLS"):
            raise ValueError("volume OFF needs a CELLS block")
        m = int(lines[pos].split()[1])
        cells = []
        for ln in lines[pos + 1 : pos + 1 + m]:
            parts = [int(x) for x in ln.split()]
            if parts[0] != 4:
                raise ValueError("CELLS block rows must be tetrahedra")
            cells.append(parts[1:5])
        dim = 3
        cell_arr = np.array(cells, dtype=np.int64)
    if np.allclose(vertices[:, 2], 0.0) and dim == 2:
        vertices = vertices[:, :2]
    if weld and len(vertices):
        vertices, cell_arr, _ = weld_vertices(vertices, cell_arr)
    return SimplicialComplex(vertices, cell_arr, dim)


class MeshBuilder:
    """Incremental mesh assembly with symbolic vertex keys.

    Shared vertices are created once under a hashable key, so meshes
    assembled from several construction passes conform exactly without
    floating-point welding.
    """

    def __init__(self, ambient_dim):
        self.ambient_dim = ambient_dim
        self._ids = {}
        self.coords = []
        self.cells = []
        self.cell_labels = []

    def vertex(self, key, coords=None):
        if key in self._ids:
            return self._ids[key]
        if coords is None:
            raise KeyError(f"vertex {key!r} not registered yet")
        vid = len(self.coords)
        self._ids[key] = vid
        c = np.asarray(coords, dtype=float)
        if c.shape != (self.ambient_dim,):
            raise ValueError(f"expected {self.ambient_dim}D coords, got {c.shape}")
        self.coords.append(c)
        return vid

    def has_vertex(self, key):
        return key in self._ids

    def add_cell(self, vertex_ids, label=None):
        self.cells.append(list(map(int, vertex_ids)))
        self.cell_labels.append(label)

    def build(self, dim, labels=None):
        labels = dict(labels or {})
        if any(lbl is not None for lbl in self.cell_labels):
            labels["cells"] = self.cell_labels
        verts = np.array(self.coords, dtype=float).reshape(-1, self.ambient_dim)
        cells = np.array(self.cells, dtype=np.int64).reshape(-1, dim + 1)
        return SimplicialComplex(verts, cells, dim, labels)
