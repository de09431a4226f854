###############################################################################
# tfac (C) tfac contributors 2026
#
# Structured triangulation of an axis-aligned rectangle: an nx-by-ny grid of
# cells, each split into two triangles by the diagonal from its lower-left to
# its upper-right corner. Edges are oriented globally from the lower to the
# higher vertex index
###############################################################################

from __future__ import annotations

import logging
import math
from pathlib import Path
from typing import ClassVar

import numpy as np

from tfac.errors import ParameterDomainError

logger = logging.getLogger(__name__)

###############################################################################
# Implementation
###############################################################################


class TriangleMesh:
    GRID_TOLERANCE: ClassVar[float] = 1.0e-12
    """Relative tolerance when locating the x = 0 or y = 0 grid line"""

    ###########################################################################

    def __init__(
        self,
        vertices: np.ndarray,
        triangles: np.ndarray,
        domain: tuple[float, float, float, float],
    ):
        """
        Constructor: derives edges, element-edge incidence, areas and h.

        :param vertices: Coordinates, shape (n_vertices, 2).
        :type vertices: `np.ndarray`

        :param triangles: Counter-clockwise vertex triples, shape (n_triangles, 3).
        :type triangles: `np.ndarray`

        :param domain: Bounds (x_min, x_max, y_min, y_max).
        :type domain: `tuple[float, float, float, float]`
        """

        self.vertices: np.ndarray = np.asarray(vertices, dtype=float)
        self.triangles: np.ndarray = np.asarray(triangles, dtype=np.int64)
        self.domain: tuple[float, float, float, float] = domain

        # Local edge l is opposite local vertex l

        local = np.stack(
            [
                self.triangles[:, [1, 2]],
                self.triangles[:, [2, 0]],
                self.triangles[:, [0, 1]],
            ],
            axis=1,
        )
        ordered = np.sort(local.reshape(-1, 2), axis=1)
        edges, inverse = np.unique(ordered, axis=0, return_inverse=True)

        self.edges: np.ndarray = edges
        """Vertex pairs (low, high), shape (n_edges, 2)"""

        self.triangle_edges: np.ndarray = inverse.reshape(-1, 3)
        """Global edge index of each local edge, shape (n_triangles, 3)"""

        self.edge_triangle_count: np.ndarray = np.bincount(
            inverse.ravel(), minlength=len(edges)
        )
        """Number of triangles sharing each edge (1 on the boundary)"""

        p0, p1, p2 = (self.vertices[self.triangles[:, k]] for k in range(3))
        e1, e2 = p1 - p0, p2 - p0

        self.areas: np.ndarray = 0.5 * (e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])

        lengths = np.linalg.norm(
            self.vertices[edges[:, 1]] - self.vertices[edges[:, 0]], axis=1
        )

        self.edge_lengths: np.ndarray = lengths
        self.h: float = float(lengths.max())

        for array in (
            self.vertices,
            self.triangles,
            self.edges,
            self.triangle_edges,
            self.areas,
            self.edge_lengths,
        ):
            array.setflags(write=False)

    ###########################################################################

    def __repr__(self) -> str:
        return (
            f"TriangleMesh(domain={self.domain}, triangles={self.n_triangles}, "
            f"h={self.h:.4g})"
        )

    ###########################################################################

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    ###########################################################################

    @staticmethod
    def build_structured_mesh(
        domain: tuple[float, float, float, float], nx: int, ny: int
    ) -> TriangleMesh:
        """
        Build the right-diagonal triangulation of a rectangle.

        :param domain: Bounds (x_min, x_max, y_min, y_max).
        :type domain: `tuple[float, float, float, float]`

        :param nx: Cells along x.
        :type nx: `int`

        :param ny: Cells along y.
        :type ny: `int`

        :return: New mesh with 2 * nx * ny triangles.
        :rtype: `TriangleMesh`

        :raises ParameterDomainError: on non-positive counts, an empty domain
            or when x = 0 (y = 0) crosses the domain without being a grid line.
        """

        x_min, x_max, y_min, y_max = (float(bound) for bound in domain)

        if not (x_max > x_min and y_max > y_min):
            raise ParameterDomainError("domain", f"is empty: {domain}")

        xs = TriangleMesh.__grid_line(x_min, x_max, nx, "nx")
        ys = TriangleMesh.__grid_line(y_min, y_max, ny, "ny")

        gx, gy = np.meshgrid(xs, ys)
        vertices = np.column_stack([gx.ravel(), gy.ravel()])

        # Vertex (i, j) has index i + j * (nx + 1)

        i, j = np.meshgrid(np.arange(nx), np.arange(ny))
        v00 = (i + j * (nx + 1)).ravel()
        v10 = v00 + 1
        v01 = v00 + nx + 1
        v11 = v01 + 1

        lower = np.column_stack([v00, v10, v11])
        upper = np.column_stack([v00, v11, v01])
        triangles = np.stack([lower, upper], axis=1).reshape(-1, 3)

        mesh = TriangleMesh(vertices, triangles, (x_min, x_max, y_min, y_max))
        logger.debug("Built %r", mesh)

        return mesh

    ###########################################################################

    def write_text(self, path: Path):
        """
        Write a plain-text listing of vertices and triangles (0-based, one
        record per line).

        :param path: Destination file.
        :type path: `Path`
        """

        lines = [f"# vertices {self.n_vertices}"]
        lines.extend(
            f"{k} {x!r} {y!r}" for k, (x, y) in enumerate(self.vertices.tolist())
        )
        lines.append(f"# triangles {self.n_triangles}")
        lines.extend(
            f"{k} {a} {b} {c}" for k, (a, b, c) in enumerate(self.triangles.tolist())
        )

        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

    ###########################################################################

    @staticmethod
    def __grid_line(low: float, high: float, count: int, key: str) -> np.ndarray:
        if int(count) != count or count < 1:
            raise ParameterDomainError(key, f"must be a positive integer, got {count}")

        coords = np.linspace(low, high, int(count) + 1)

        if low < 0 < high:
            position = -low * count / (high - low)
            index = round(position)

            if not math.isclose(
                position, index, abs_tol=TriangleMesh.GRID_TOLERANCE * count
            ):
                raise ParameterDomainError(
                    key,
                    f"{count} subdivisions of ({low}, {high}) miss the kink line "
                    "at 0 (use an even count on a symmetric interval)",
                )

            coords[index] = 0.0

        return coords


###############################################################################
