import numpy as np
import pytest

from fatmash import complexes
from fatmash.complexes import SimplicialComplex
from fatmash.errors import InvalidComplex

RNG = np.random.default_rng(7)


def two_triangles_shared_edge():
    verts = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, 1.0], [0.5, -1.0]])
    cells = np.array([[0, 1, 2], [0, 3, 1]])
    return SimplicialComplex(verts, cells, 2)


def single_tet():
    verts = np.array(
        [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
    )
    return SimplicialComplex(verts, np.array([[0, 1, 2, 3]]), 3)


def two_tets_glued():
    verts = np.array(
        [
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
            [1.0, 1.0, 1.0],
        ]
    )
    cells = np.array([[0, 1, 2, 3], [1, 2, 3, 4]])
    return SimplicialComplex(verts, cells, 3)


def test_validate_two_triangles_valid():
    report = complexes.validate(two_triangles_shared_edge())
    assert report.is_valid
    assert report.violations == []


def test_validate_sliver_overlap_invalid():
    # second triangle overlaps the first along half of its base edge
    verts = np.array(
        [[0.0, 0.0], [2.0, 0.0], [1.0, 1.0], [1.0, 0.0], [3.0, 0.0], [2.0, -1.0]]
    )
    cells = np.array([[0, 1, 2], [3, 4, 5]])
    report = complexes.validate(SimplicialComplex(verts, cells, 2))
    assert not report.is_valid
    assert "improper-intersection" in report.kinds()


def test_validate_duplicate_cell():
    verts = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, 1.0]])
    cells = np.array([[0, 1, 2], [2, 0, 1]])
    report = complexes.validate(SimplicialComplex(verts, cells, 2))
    assert not report.is_valid
    assert "duplicate" in report.kinds()


def test_validate_interior_overlap_invalid():
    verts = np.array(
        [[0.0, 0.0], [2.0, 0.0], [1.0, 2.0], [1.0, -0.5], [1.8, 1.0], [0.2, 1.0]]
    )
    cells = np.array([[0, 1, 2], [3, 4, 5]])
    report = complexes.validate(SimplicialComplex(verts, cells, 2))
    assert not report.is_valid


def test_validate_t_junction_invalid():
    # vertex 4 sits in the middle of the shared edge of cell 0
    verts = np.array(
        [[0.0, 0.0], [2.0, 0.0], [1.0, 1.0], [1.0, -1.0], [1.0, 0.0], [2.0, -0.2]]
    )
    cells = np.array([[0, 1, 2], [0, 4, 3], [4, 1, 5]])
    report = complexes.validate(SimplicialComplex(verts, cells, 2))
    assert not report.is_valid
    assert "improper-intersection" in report.kinds()


def test_validate_3d_facet_shared_by_three():
    verts = np.array(
        [
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0],
            [1.0, 1.0, 1.0],
        ]
    )
    cells = np.array([[0, 1, 2, 3], [0, 1, 2, 4], [0, 1, 2, 5]])
    report = complexes.validate(SimplicialComplex(verts, cells, 3), check_orientation=False)
    assert not report.is_valid
    assert "improper-intersection" in report.kinds()


def test_boundary_single_tet():
    b = complexes.boundary(single_tet())
    assert b.dim == 2
    assert b.n_cells == 4


def test_boundary_two_glued_tets():
    b = complexes.boundary(two_tets_glued())
    assert b.n_cells == 6


def test_boundary_of_boundary_empty():
    b = complexes.boundary(single_tet())
    bb = complexes.boundary_unchecked(b)
    assert bb.n_cells == 0


def test_subdivide_triangle_counts_and_area():
    c = two_triangles_shared_edge()
    sub = complexes.subdivide_barycentric(c)
    assert sub.n_cells == 12
    assert sub.measure() == pytest.approx(c.measure(), rel=1e-12)
    assert complexes.validate(sub).is_valid


def test_subdivide_tet_counts_and_volume():
    c = single_tet()
    sub = complexes.subdivide_barycentric(c)
    assert sub.n_cells == 24
    assert sub.measure() == pytest.approx(c.measure(), rel=1e-12)
    assert complexes.validate(sub).is_valid


def test_subdivide_random_mesh_volume_preserved():
    c = two_tets_glued()
    sub = complexes.subdivide_barycentric(c)
    assert sub.measure() == pytest.approx(c.measure(), rel=1e-12)
    sub2 = complexes.subdivide_barycentric(sub)
    assert sub2.measure() == pytest.approx(c.measure(), rel=1e-12)
    assert complexes.validate(sub2).is_valid


def test_json_roundtrip_idempotent(tmp_path):
    c = two_tets_glued().with_labels(part="test")
    path = tmp_path / "mesh.json"
    complexes.save_json(c, path)
    c2 = complexes.load_json(path)
    assert np.array_equal(c2.cells, c.cells)
    assert np.allclose(c2.vertices, c.vertices)
    assert c2.labels["part"] == "test"
    complexes.save_json(c2, tmp_path / "mesh2.json")
    assert (tmp_path / "mesh.json").read_bytes() == (tmp_path / "mesh2.json").read_bytes()


def test_off_roundtrip_2d(tmp_path):
    c = two_triangles_shared_edge()
    path = tmp_path / "mesh.off"
    complexes.save_off(c, path)
    c2 = complexes.load_off(path)
    assert np.array_equal(np.sort(c2.cells, axis=1), np.sort(c.cells, axis=1))
    assert np.allclose(c2.vertices, c.vertices)


def test_off_roundtrip_3d(tmp_path):
    c = two_tets_glued()
    path = tmp_path / "mesh3.off"
    complexes.save_off(c, path)
    c2 = complexes.load_off(path)
    assert c2.dim == 3
    assert np.array_equal(c2.cells, c.cells)


def test_weld_merges_close_vertices():
    verts = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, 1.0], [1.0 + 1e-12, 0.0], [2.0, 1.0]])
    cells = np.array([[0, 1, 2], [3, 4, 2]])
    v, c, _ = complexes.weld_vertices(verts, cells)
    assert len(v) == 4
    assert set(c[1].tolist()) & set(c[0].tolist()) == {1, 2}


def test_canonicalized_orientation():
    verts = np.array(
        [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
    )
    c = SimplicialComplex(verts, np.array([[0, 2, 1, 3]]), 3).canonicalized()
    from fatmash.geometry import orientation_sign

    assert orientation_sign(c.vertices[c.cells[0]]) == 1


def test_require_valid_raises():
    verts = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, 1.0]])
    cells = np.array([[0, 1, 2], [2, 0, 1]])
    with pytest.raises(InvalidComplex):
        complexes.require_valid(SimplicialComplex(verts, cells, 2))


def test_mesh_builder_shared_vertices():
    b = complexes.MeshBuilder(2)
    v0 = b.vertex(("a",), [0.0, 0.0])
    v1 = b.vertex(("b",), [1.0, 0.0])
    v2 = b.vertex(("c",), [0.5, 1.0])
    assert b.vertex(("a",)) == v0
    b.add_cell([v0, v1, v2], label={"part": "x"})
    mesh = b.build(2)
    assert mesh.n_cells == 1
    assert mesh.cell_label(0) == {"part": "x"}
