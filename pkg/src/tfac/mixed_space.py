###############################################################################
# tfac (C) tfac contributors 2026
#
# Mixed finite element pair RT_k x P_k-dc (k = 0 or 1) on a triangle mesh
#
# Flux degrees of freedom are the moments of the normal component against
# P_k on every edge (normal = tangent rotated clockwise, tangent pointing from
# the lower to the higher vertex index) and, for k = 1, the moments of both
# components over every element. Local bases are obtained by inverting the
# matrix of these functionals applied to monomials in the centred, scaled
# coordinates (xi, eta) = ((x, y) - centroid) / diameter. Interpolation is
# therefore just the evaluation of the functionals.
#
# Scalar bases are {1} (k = 0) and {1, xi, eta} (k = 1) on every element.
# Every element integral uses the degree-6 triangle rule
###############################################################################

from __future__ import annotations

import logging
import math
from typing import Callable, ClassVar

import numpy as np
import scipy.sparse as sps

from tfac.discrete_field import DiscreteField
from tfac.errors import ParameterDomainError
from tfac.field_role import FieldRole
from tfac.triangle_mesh import TriangleMesh
from tfac.triangle_quadrature import TriangleQuadrature

logger = logging.getLogger(__name__)

ScalarFunction = Callable[..., np.ndarray]
VectorFunction = Callable[..., "np.ndarray | tuple[np.ndarray, np.ndarray]"]

###############################################################################
# Implementation
###############################################################################


class MixedSpace:
    ORDERS: ClassVar[tuple[int, ...]] = (0, 1)
    """Supported polynomial orders k"""

    ###########################################################################

    def __init__(self, mesh: TriangleMesh, order: int = 1):
        """
        Constructor: lays out the degrees of freedom and precomputes basis
        values at the quadrature points of every element.

        :param mesh: Triangulation.
        :type mesh: `TriangleMesh`

        :param order: Polynomial order k, 0 or 1.
        :type order: `int`
        """

        if order not in MixedSpace.ORDERS:
            raise ParameterDomainError("order", f"must be 0 or 1, got {order}")

        if np.any(mesh.areas <= 0):
            bad = int(np.argmax(mesh.areas <= 0))
            raise ValueError(f"Degenerate element {bad} (area {mesh.areas[bad]!r})")

        k = order
        nt, ne = mesh.n_triangles, mesh.n_edges

        self.mesh: TriangleMesh = mesh
        self.order: int = k

        self.n_edge_dofs: int = k + 1
        """Flux moments per edge"""

        self.n_interior_dofs: int = 2 * k
        """Flux moments per element interior"""

        self.n_local_flux: int = 3 * (k + 1) + 2 * k
        self.n_local_scalar: int = (k + 1) * (k + 2) // 2

        self.n_sigma: int = (k + 1) * ne + 2 * k * nt
        self.n_u: int = self.n_local_scalar * nt

        # Degree-of-freedom maps: element -> global index

        edge_part = (
            mesh.triangle_edges[:, :, None] * (k + 1) + np.arange(k + 1)
        ).reshape(nt, -1)
        interior_part = (
            (k + 1) * ne + 2 * np.arange(nt)[:, None] + np.arange(2 * k)[None, :]
        )

        self.flux_dofs: np.ndarray = np.hstack([edge_part, interior_part])
        self.scalar_dofs: np.ndarray = np.arange(self.n_u).reshape(nt, -1)

        # Geometry and quadrature

        corners = mesh.vertices[mesh.triangles]
        bary, weights = TriangleQuadrature.triangle_rule()

        self.centroids: np.ndarray = corners.mean(axis=1)
        self.diameters: np.ndarray = mesh.edge_lengths[mesh.triangle_edges].max(axis=1)
        self.quad_points: np.ndarray = np.einsum("qk,tkd->tqd", bary, corners)
        self.quad_weights: np.ndarray = weights[None, :] * mesh.areas[:, None]

        # Local bases at quadrature points

        mono_values, mono_div = self.__monomials(self.quad_points)
        coeffs = np.linalg.inv(self.__dof_matrix(mono_values))

        self.flux_basis: np.ndarray = np.einsum("tmqc,tmi->tiqc", mono_values, coeffs)
        """Flux basis values, shape (n_triangles, n_local_flux, n_quad, 2)"""

        self.flux_divergence: np.ndarray = np.einsum("tmq,tmi->tiq", mono_div, coeffs)
        """Flux basis divergences, shape (n_triangles, n_local_flux, n_quad)"""

        self.scalar_basis: np.ndarray = self.__scalar_monomials(self.quad_points)
        """Scalar basis values, shape (n_triangles, n_local_scalar, n_quad)"""

        self.local_scalar_mass: np.ndarray = np.einsum(
            "tpq,trq,tq->tpr", self.scalar_basis, self.scalar_basis, self.quad_weights
        )

        logger.info(
            "Mixed space RT%d x P%d-dc: n_sigma = %d, n_u = %d",
            k,
            k,
            self.n_sigma,
            self.n_u,
        )

    ###########################################################################

    def __repr__(self) -> str:
        return f"MixedSpace(order={self.order}, n_sigma={self.n_sigma}, n_u={self.n_u})"

    ###########################################################################

    def dof_count(self, role: FieldRole) -> int:
        return self.n_sigma if role == FieldRole.FLUX else self.n_u

    ###########################################################################

    def scalar_values(self, coefficients: np.ndarray) -> np.ndarray:
        """
        :param coefficients: Scalar coefficient vector of length n_u.
        :type coefficients: `np.ndarray`

        :return: Values at the quadrature points, shape (n_triangles, n_quad).
        :rtype: `np.ndarray`
        """

        local = np.asarray(coefficients)[self.scalar_dofs]

        return np.einsum("tp,tpq->tq", local, self.scalar_basis)

    ###########################################################################

    def flux_values(self, coefficients: np.ndarray) -> np.ndarray:
        """
        :param coefficients: Flux coefficient vector of length n_sigma.
        :type coefficients: `np.ndarray`

        :return: Values at the quadrature points, shape (n_triangles, n_quad, 2).
        :rtype: `np.ndarray`
        """

        local = np.asarray(coefficients)[self.flux_dofs]

        return np.einsum("ti,tiqc->tqc", local, self.flux_basis)

    ###########################################################################

    def scalar_load(self, values: np.ndarray) -> np.ndarray:
        """
        Integrals of a function against every scalar basis function.

        :param values: Function values at the quadrature points, shape
            (n_triangles, n_quad).
        :type values: `np.ndarray`

        :return: Load vector of length n_u.
        :rtype: `np.ndarray`
        """

        local = np.einsum("tpq,tq,tq->tp", self.scalar_basis, values, self.quad_weights)

        return local.ravel()

    ###########################################################################

    def weighted_scalar_mass(self, values: np.ndarray) -> sps.csc_array:
        """
        Block-diagonal matrix of (c v_r, v_p) for a weight c given at the
        quadrature points.

        :param values: Weight values, shape (n_triangles, n_quad).
        :type values: `np.ndarray`

        :return: Sparse n_u x n_u matrix.
        :rtype: `sps.csc_array`
        """

        local = np.einsum(
            "tpq,trq,tq->tpr",
            self.scalar_basis,
            self.scalar_basis,
            values * self.quad_weights,
        )

        return self.__block_diagonal(local)

    ###########################################################################

    def element_means(self, field: DiscreteField) -> np.ndarray:
        """
        :param field: Scalar field.
        :type field: `DiscreteField`

        :return: Mean value over every element.
        :rtype: `np.ndarray`
        """

        values = self.scalar_values(field.coefficients)

        return (values * self.quad_weights).sum(axis=1) / self.mesh.areas

    ###########################################################################

    def flux_moments(self, field: DiscreteField) -> np.ndarray:
        """
        :param field: Flux field.
        :type field: `DiscreteField`

        :return: Normal moments per edge, shape (n_edges, k + 1).
        :rtype: `np.ndarray`
        """

        count = self.n_edge_dofs * self.mesh.n_edges

        return field.coefficients[:count].reshape(-1, self.n_edge_dofs)

    ###########################################################################

    def max_abs_scalar(self, field: DiscreteField) -> float:
        """Largest magnitude of a scalar field at the quadrature points"""

        return float(np.max(np.abs(self.scalar_values(field.coefficients))))

    ###########################################################################

    def l2_project(self, f: ScalarFunction) -> DiscreteField:
        """
        L2 projection onto the scalar space by element-wise mass solves.

        :param f: Function of (x, y) accepting arrays.
        :type f: `Callable`

        :return: Scalar field P_h f.
        :rtype: `DiscreteField`
        """

        x, y = self.quad_points[..., 0], self.quad_points[..., 1]
        values = np.broadcast_to(np.asarray(f(x, y), dtype=float), x.shape)
        load = self.scalar_load(values).reshape(-1, self.n_local_scalar)
        local = np.linalg.solve(self.local_scalar_mass, load[..., None])[..., 0]

        return DiscreteField(self, FieldRole.SCALAR, local.ravel())

    ###########################################################################

    def fortin_interpolate(self, w: VectorFunction) -> DiscreteField:
        """
        Raviart-Thomas interpolation: reproduces the edge normal moments
        against P_k and, for k = 1, the element moments of w.

        :param w: Function of (x, y) returning the two components.
        :type w: `Callable`

        :return: Flux field Pi_h w.
        :rtype: `DiscreteField`
        """

        mesh, k = self.mesh, self.order
        sigma, weights = TriangleQuadrature.edge_rule()

        start = mesh.vertices[mesh.edges[:, 0]]
        tangent = mesh.vertices[mesh.edges[:, 1]] - start
        normal = np.column_stack([tangent[:, 1], -tangent[:, 0]])

        points = start[:, None, :] + sigma[None, :, None] * tangent[:, None, :]
        values = MixedSpace.vector_values(w, points[..., 0], points[..., 1])
        normal_values = np.einsum("egc,ec->eg", values, normal)
        edge_moments = normal_values @ (weights[:, None] * self.__edge_tests(sigma))

        parts = [edge_moments.ravel()]

        if k == 1:
            x_quad, y_quad = self.quad_points[..., 0], self.quad_points[..., 1]
            inside = MixedSpace.vector_values(w, x_quad, y_quad)
            parts.append(np.einsum("tqc,tq->tc", inside, self.quad_weights).ravel())

        return DiscreteField(self, FieldRole.FLUX, np.concatenate(parts))

    ###########################################################################

    def l2_error(
        self,
        field: DiscreteField,
        exact: ScalarFunction | VectorFunction,
        t: float | None = None,
    ) -> float:
        """
        L2 norm of the difference between a discrete field and a function.

        :param field: Scalar or flux field.
        :type field: `DiscreteField`

        :param exact: Function of (x, y) or (x, y, t); for a flux it returns
            the two components.
        :type exact: `Callable`

        :param t: Time passed to `exact` when given.
        :type t: `float` | `None`

        :return: Error norm.
        :rtype: `float`
        """

        x, y = self.quad_points[..., 0], self.quad_points[..., 1]
        args = (x, y) if t is None else (x, y, t)

        if field.role == FieldRole.SCALAR:
            values = np.broadcast_to(np.asarray(exact(*args), dtype=float), x.shape)
            diff2 = (self.scalar_values(field.coefficients) - values) ** 2
        else:
            values = MixedSpace.vector_values(exact, *args)
            diff2 = ((self.flux_values(field.coefficients) - values) ** 2).sum(axis=-1)

        return math.sqrt(float((diff2 * self.quad_weights).sum()))

    ###########################################################################

    def __block_diagonal(self, local: np.ndarray) -> sps.csc_array:
        rows = np.broadcast_to(self.scalar_dofs[:, :, None], local.shape)
        cols = np.broadcast_to(self.scalar_dofs[:, None, :], local.shape)

        return sps.coo_array(
            (local.ravel(), (rows.ravel(), cols.ravel())), shape=(self.n_u, self.n_u)
        ).tocsc()

    ###########################################################################

    def __dof_matrix(self, mono_at_quad: np.ndarray) -> np.ndarray:
        """Functionals applied to the monomials: shape (n_triangles, n, n)"""

        mesh = self.mesh
        sigma, weights = TriangleQuadrature.edge_rule()
        edges = mesh.edges[mesh.triangle_edges]

        start = mesh.vertices[edges[..., 0]]
        tangent = mesh.vertices[edges[..., 1]] - start
        normal = np.stack([tangent[..., 1], -tangent[..., 0]], axis=-1)

        points = (
            start[:, :, None, :] + sigma[None, None, :, None] * tangent[:, :, None, :]
        )
        nt, ng = mesh.n_triangles, len(sigma)

        values, _ = self.__monomials(points.reshape(nt, 3 * ng, 2))
        values = values.reshape(nt, -1, 3, ng, 2)

        normal_values = np.einsum("tmlgc,tlc->tmlg", values, normal)
        tests = weights[:, None] * self.__edge_tests(sigma)
        edge_rows = np.einsum("tmlg,gq->tlqm", normal_values, tests).reshape(
            nt, -1, values.shape[1]
        )

        if self.order == 0:
            return edge_rows

        interior_rows = np.einsum("tmqc,tq->tcm", mono_at_quad, self.quad_weights)

        return np.concatenate([edge_rows, interior_rows], axis=1)

    ###########################################################################

    def __edge_tests(self, sigma: np.ndarray) -> np.ndarray:
        """P_k test functions on an edge parametrised by sigma in [0, 1]"""

        if self.order == 0:
            return np.ones((len(sigma), 1))

        return np.column_stack([np.ones_like(sigma), 2.0 * sigma - 1.0])

    ###########################################################################

    def __local_coordinates(self, points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        scale = self.diameters[:, None]
        xi = (points[..., 0] - self.centroids[:, 0, None]) / scale
        eta = (points[..., 1] - self.centroids[:, 1, None]) / scale

        return xi, eta

    ###########################################################################

    def __monomials(self, points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """
        Vector monomials spanning RT_k and their divergences at per-element
        points of shape (n_triangles, n_points, 2).
        """

        xi, eta = self.__local_coordinates(points)
        one, zero = np.ones_like(xi), np.zeros_like(xi)
        inv = 1.0 / self.diameters[:, None]

        if self.order == 0:
            fields = [(one, zero), (zero, one), (xi, eta)]
            div = [zero, zero, 2.0 * inv * one]
        else:
            fields = [
                (one, zero),
                (xi, zero),
                (eta, zero),
                (zero, one),
                (zero, xi),
                (zero, eta),
                (xi * xi, xi * eta),
                (xi * eta, eta * eta),
            ]
            div = [
                zero,
                inv * one,
                zero,
                zero,
                zero,
                inv * one,
                3.0 * inv * xi,
                3.0 * inv * eta,
            ]

        values = np.stack([np.stack(pair, axis=-1) for pair in fields], axis=1)

        return values, np.stack(div, axis=1)

    ###########################################################################

    def __scalar_monomials(self, points: np.ndarray) -> np.ndarray:
        xi, eta = self.__local_coordinates(points)

        if self.order == 0:
            return np.ones_like(xi)[:, None, :]

        return np.stack([np.ones_like(xi), xi, eta], axis=1)

    ###########################################################################

    @staticmethod
    def vector_values(w: VectorFunction, *args) -> np.ndarray:
        """
        Evaluate a vector function whose components may be scalars.

        :param w: Function returning the two components.
        :type w: `Callable`

        :param args: Coordinate arrays x, y (and optionally a time).
        :type args: `tuple`

        :return: Values with the components stacked last.
        :rtype: `np.ndarray`
        """

        shape = np.shape(args[0])
        wx, wy = w(*args)

        return np.stack(
            [
                np.broadcast_to(np.asarray(wx, dtype=float), shape),
                np.broadcast_to(np.asarray(wy, dtype=float), shape),
            ],
            axis=-1,
        )


###############################################################################
