import math
from pathlib import Path

import numpy as np
import pytest

from tests.conftest import errors_mod, triangle_mesh_mod

TriangleMesh = triangle_mesh_mod.TriangleMesh
ParameterDomainError = errors_mod.ParameterDomainError


class TestStructuredMesh:
    @pytest.mark.parametrize("nx, ny", [(1, 1), (4, 4), (3, 5)])
    def test_counts(self, nx: int, ny: int):
        mesh = TriangleMesh.build_structured_mesh((0.0, 1.0, 0.0, 2.0), nx, ny)

        assert mesh.n_vertices == (nx + 1) * (ny + 1)
        assert mesh.n_triangles == 2 * nx * ny
        assert mesh.n_edges == 3 * nx * ny + nx + ny

    def test_boundary_edges(self, unit_mesh):
        boundary = np.count_nonzero(unit_mesh.edge_triangle_count == 1)
        assert boundary == 16
        assert np.all(unit_mesh.edge_triangle_count <= 2)

    def test_areas_positive_and_cover_domain(self, symmetric_mesh):
        assert np.all(symmetric_mesh.areas > 0)
        assert symmetric_mesh.areas.sum() == pytest.approx(4.0)

    def test_mesh_size_is_cell_diagonal(self, unit_mesh):
        assert unit_mesh.h == pytest.approx(math.sqrt(2.0) / 4.0)

    def test_edges_are_sorted_pairs(self, unit_mesh):
        edges = unit_mesh.edges
        assert np.all(edges[:, 0] < edges[:, 1])
        assert len(np.unique(edges, axis=0)) == len(edges)

    def test_local_edge_is_opposite_local_vertex(self, unit_mesh):
        for t, triangle in enumerate(unit_mesh.triangles):
            for local in range(3):
                edge = unit_mesh.edges[unit_mesh.triangle_edges[t, local]]
                assert triangle[local] not in edge
                assert set(edge) <= set(triangle)

    def test_axes_are_exact_grid_lines(self, symmetric_mesh):
        xs = np.unique(symmetric_mesh.vertices[:, 0])
        assert 0.0 in xs
        assert len(xs) == 5

    @pytest.mark.parametrize("nx, ny", [(3, 4), (4, 5)])
    def test_rejects_grid_missing_the_axes(self, nx: int, ny: int):
        with pytest.raises(ParameterDomainError) as info:
            TriangleMesh.build_structured_mesh((-1.0, 1.0, -1.0, 1.0), nx, ny)
        assert info.value.key == ("nx" if nx == 3 else "ny")

    @pytest.mark.parametrize("nx", [0, -2, 1.5])
    def test_rejects_bad_counts(self, nx):
        with pytest.raises(ParameterDomainError):
            TriangleMesh.build_structured_mesh((0.0, 1.0, 0.0, 1.0), nx, 2)

    def test_rejects_empty_domain(self):
        with pytest.raises(ParameterDomainError) as info:
            TriangleMesh.build_structured_mesh((1.0, 1.0, 0.0, 1.0), 2, 2)
        assert info.value.key == "domain"

    def test_arrays_are_read_only(self, unit_mesh):
        with pytest.raises(ValueError):
            unit_mesh.vertices[0, 0] = 1.0

    def test_repr(self, unit_mesh):
        assert "triangles=32" in repr(unit_mesh)


class TestWriteText:
    def test_listing(self, tmp_path: Path):
        mesh = TriangleMesh.build_structured_mesh((0.0, 1.0, 0.0, 1.0), 1, 1)
        path = tmp_path / "mesh.txt"
        mesh.write_text(path)
        lines = path.read_text(encoding="utf-8").splitlines()

        assert lines[0] == "# vertices 4"
        assert lines[1] == "0 0.0 0.0"
        assert lines[5] == "# triangles 2"
        assert lines[6] == "0 0 1 3"
        assert lines[7] == "1 0 3 2"
