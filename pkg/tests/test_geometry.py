import numpy as np
import pytest

from fatmash import geometry
from fatmash.errors import DegenerateSimplex

RNG = np.random.default_rng(20240811)

EQUILATERAL = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, np.sqrt(3) / 2]])
REGULAR_TET = np.array(
    [
        [1.0, 1.0, 1.0],
        [1.0, -1.0, -1.0],
        [-1.0, 1.0, -1.0],
        [-1.0, -1.0, 1.0],
    ]
) / (2 * np.sqrt(2))  # edge length 1


def random_triangle(rng, lo=-5, hi=5):
    while True:
        t = rng.uniform(lo, hi, size=(3, 2))
        if geometry.normalized_measure(t) > 1e-3:
            return t


def random_tet(rng, lo=-5, hi=5):
    while True:
        t = rng.uniform(lo, hi, size=(4, 3))
        if geometry.normalized_measure(t) > 1e-3:
            return t


def test_circum_in_equilateral():
    R, r = geometry.circumradius_inradius(EQUILATERAL)
    assert R == pytest.approx(1 / np.sqrt(3), rel=1e-12)
    assert r == pytest.approx(1 / (2 * np.sqrt(3)), rel=1e-12)


def test_circum_in_regular_tet():
    R, r = geometry.circumradius_inradius(REGULAR_TET)
    assert R == pytest.approx(np.sqrt(3.0 / 8.0), rel=1e-12)
    assert r == pytest.approx(1 / (2 * np.sqrt(6)), rel=1e-12)


def test_circum_in_degenerate_raises():
    flat = np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]])
    with pytest.raises(DegenerateSimplex):
        geometry.circumradius_inradius(flat)


def _oracle_triangle_radii(tri):
    """Independent oracle: r = Area/s and R = abc/(4 Area) evaluated from
    exact rational squared lengths and areas (50-significant-digit sqrt)."""
    from fractions import Fraction
    import decimal

    decimal.getcontext().prec = 50
    p = [[Fraction(float(x)) for x in row] for row in tri]

    def sq_dist(a, b):
        return sum((x - y) ** 2 for x, y in zip(a, b))

    def dec_sqrt(fr):
        return (decimal.Decimal(fr.numerator) / decimal.Decimal(fr.denominator)).sqrt()

    a = dec_sqrt(sq_dist(p[1], p[2]))
    b = dec_sqrt(sq_dist(p[2], p[0]))
    c = dec_sqrt(sq_dist(p[0], p[1]))
    cross = (p[1][0] - p[0][0]) * (p[2][1] - p[0][1]) - (p[1][1] - p[0][1]) * (
        p[2][0] - p[0][0]
    )
    area = decimal.Decimal(abs(cross).numerator) / decimal.Decimal(
        abs(cross).denominator
    ) / 2
    s = (a + b + c) / 2
    return float(a * b * c / (4 * area)), float(area / s)


def test_circum_in_matches_rational_oracle():
    for _ in range(200):
        tri = random_triangle(RNG)
        R, r = geometry.circumradius_inradius(tri)
        R0, r0 = _oracle_triangle_radii(tri)
        assert R == pytest.approx(R0, rel=1e-10)
        assert r == pytest.approx(r0, rel=1e-10)


def test_fatness_extremes_and_totality():
    assert geometry.fatness(EQUILATERAL) == pytest.approx(0.5, rel=1e-12)
    assert geometry.fatness(REGULAR_TET) == pytest.approx(1 / 3, rel=1e-12)
    collinear = np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]])
    assert geometry.fatness(collinear) == 0.0


def test_fatness_rigid_motion_and_scaling_invariance():
    for _ in range(100):
        tet = random_tet(RNG)
        f0 = geometry.fatness(tet)
        theta = RNG.uniform(0, 2 * np.pi)
        c, s = np.cos(theta), np.sin(theta)
        rot = np.array([[c, -s, 0], [s, c, 0], [0, 0, 1.0]])
        scale = RNG.uniform(0.1, 10.0)
        moved = scale * tet @ rot.T + RNG.uniform(-3, 3, size=3)
        assert abs(geometry.fatness(moved) - f0) <= 1e-12 + 1e-9 * f0


def test_min_angle_examples():
    assert geometry.min_angle(EQUILATERAL) == pytest.approx(np.pi / 3, rel=1e-12)
    right_iso = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    assert geometry.min_angle(right_iso) == pytest.approx(np.pi / 4, rel=1e-12)
    tri_345 = np.array([[0.0, 0.0], [4.0, 0.0], [4.0, 3.0]])
    assert geometry.min_angle(tri_345) == pytest.approx(np.arcsin(3 / 5), rel=1e-12)


def test_min_angle_law_of_cosines_oracle():
    for _ in range(100):
        tri = random_triangle(RNG)
        a = np.linalg.norm(tri[1] - tri[2])
        b = np.linalg.norm(tri[2] - tri[0])
        c = np.linalg.norm(tri[0] - tri[1])
        angles = [
            np.arccos(np.clip((b * b + c * c - a * a) / (2 * b * c), -1, 1)),
            np.arccos(np.clip((a * a + c * c - b * b) / (2 * a * c), -1, 1)),
            np.arccos(np.clip((a * a + b * b - c * c) / (2 * a * b), -1, 1)),
        ]
        assert geometry.min_angle(tri) == pytest.approx(min(angles), abs=1e-10)


def test_dihedral_regular_tet():
    angles = geometry.dihedral_angles(REGULAR_TET)
    assert np.allclose(angles, np.arccos(1 / 3), atol=1e-12)


def test_dihedral_orthoscheme_has_right_angle():
    ortho = np.array(
        [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
    )
    angles = geometry.dihedral_angles(ortho)
    assert np.any(np.abs(angles - np.pi / 2) < 1e-12)


def _oracle_dihedrals(tet):
    """Angles between face normals, converted to interior dihedrals."""
    out = []
    for i, j in geometry.TET_EDGES:
        others = [m for m in range(4) if m not in (i, j)]
        # faces (i, j, others[0]) and (i, j, others[1])
        n1 = np.cross(tet[j] - tet[i], tet[others[0]] - tet[i])
        n2 = np.cross(tet[j] - tet[i], tet[others[1]] - tet[i])
        c = np.dot(n1, n2) / (np.linalg.norm(n1) * np.linalg.norm(n2))
        out.append(np.arccos(np.clip(c, -1, 1)))
    return np.array(out)


def test_dihedral_random_matches_normal_oracle():
    for _ in range(100):
        tet = random_tet(RNG)
        assert np.allclose(
            geometry.dihedral_angles(tet), _oracle_dihedrals(tet), atol=1e-9
        )


def test_orientation_sign():
    std = np.array(
        [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
    )
    assert geometry.orientation_sign(std) == 1
    swapped = std[[0, 2, 1, 3]]
    assert geometry.orientation_sign(swapped) == -1
    coplanar = np.array(
        [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 1.0, 0.0]]
    )
    assert geometry.orientation_sign(coplanar) == 0


def test_orientation_sign_permutation_parity():
    from itertools import permutations

    tet = random_tet(RNG)
    base = geometry.orientation_sign(tet)

    def parity(perm):
        p = list(perm)
        sign = 1
        for i in range(len(p)):
            while p[i] != i:
                j = p[i]
                p[i], p[j] = p[j], p[i]
                sign = -sign
        return sign

    for perm in permutations(range(4)):
        assert geometry.orientation_sign(tet[list(perm)]) == base * parity(perm)


def test_face_fatness_floor_is_positive_and_monotone():
    # tetrahedra above a fatness floor have uniformly fat triangular faces
    n = 10_000
    pts = RNG.uniform(-1, 1, size=(n, 4, 3))
    f = geometry._batch_fatness_tet(pts)
    face_min = np.full(n, np.inf)
    for fidx in ((1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2)):
        face_min = np.minimum(face_min, geometry._batch_fatness_tri(pts[:, fidx]))
    floors = []
    for level in (0.05, 0.1, 0.2, 0.3):
        sel = f >= level
        assert sel.sum() > 20
        floors.append(face_min[sel].min())
    assert floors[0] > 0
    assert all(b >= a for a, b in zip(floors, floors[1:]))


def test_batch_fatness_agrees_with_scalar():
    verts = RNG.uniform(-2, 2, size=(40, 3))
    cells = np.array([RNG.choice(40, size=4, replace=False) for _ in range(60)])
    batch = geometry.batch_fatness(verts, cells)
    for i, cell in enumerate(cells):
        assert batch[i] == pytest.approx(geometry.fatness(verts[cell]), abs=1e-12)


def test_simplex_quality_record():
    rec = geometry.simplex_quality(REGULAR_TET)
    assert rec.fatness == pytest.approx(1 / 3, rel=1e-12)
    assert rec.min_dihedral == pytest.approx(np.arccos(1 / 3), rel=1e-9)
    rec2 = geometry.simplex_quality(EQUILATERAL)
    assert rec2.min_dihedral is None
    assert rec2.min_planar_angle == pytest.approx(np.pi / 3, rel=1e-12)
