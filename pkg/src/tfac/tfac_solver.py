###############################################################################
# tfac (C) tfac contributors 2026
#
# Fully discrete scheme: Alikhanov approximation in time at the offset levels
# t_{n-nu}, RT_k x P_k-dc mixed elements in space and a Newton-linearized
# cubic reaction, one sparse direct solve per step
#
# With phi^{n-nu} = nu phi^{n-1} + (1 - nu) phi^n the step solves for
# (sigma^n, u^n):
#
#   (sigma^{n-nu}, w) + (u^{n-nu}, div w) = 0
#   sum_j K[n,j] (u^j - u^{j-1}, v) - kappa^2 (div sigma^{n-nu}, v)
#       = (u^{n-nu} - (u^{n-1})^3, v)
#         - 3 (1 - nu) ((u^{n-1})^2 (u^n - u^{n-1}), v) + (source, v)
###############################################################################

from __future__ import annotations

import logging
from typing import ClassVar

import numpy as np
import scipy.sparse as sps
from scipy.sparse.linalg import splu

from tfac.alikhanov_kernels import AlikhanovKernels
from tfac.discrete_field import DiscreteField
from tfac.errors import ParameterDomainError, SolverError
from tfac.field_role import FieldRole
from tfac.graded_time_mesh import GradedTimeMesh
from tfac.mixed_forms import MixedForms
from tfac.mixed_space import MixedSpace
from tfac.problem_spec import ProblemSpec
from tfac.solver_flags import SolverFlags
from tfac.solver_state import SolverState
from tfac.step_system import StepSystem

logger = logging.getLogger(__name__)

###############################################################################
# Implementation
###############################################################################


class TfacSolver:
    DEFAULT_DELTA: ClassVar[float] = 2.0
    """Constant delta of the time-step monitor"""

    RESIDUAL_TOLERANCE: ClassVar[float] = 1.0e-10
    """Largest relative residual accepted from the direct solver"""

    ###########################################################################

    def __init__(
        self,
        problem: ProblemSpec,
        tmesh: GradedTimeMesh,
        space: MixedSpace,
        forms: MixedForms | None = None,
        delta: float = DEFAULT_DELTA,
    ):
        """
        Constructor: builds (or fetches) the kernel tables and the forms.

        :param problem: Problem data.
        :type problem: `ProblemSpec`

        :param tmesh: Temporal mesh; its offset must equal `problem.nu`.
        :type tmesh: `GradedTimeMesh`

        :param space: Mixed space.
        :type space: `MixedSpace`

        :param forms: Pre-assembled forms of `space` (assembled when omitted).
        :type forms: `MixedForms` | `None`

        :param delta: Constant delta > 1 of the time-step monitor.
        :type delta: `float`
        """

        if tmesh.nu != problem.nu:
            raise ParameterDomainError(
                "nu", f"mesh offset {tmesh.nu} differs from problem offset {problem.nu}"
            )
        if not (delta > 1):
            raise ParameterDomainError("delta", f"must exceed 1, got {delta}")

        self.problem: ProblemSpec = problem
        self.tmesh: GradedTimeMesh = tmesh
        self.space: MixedSpace = space
        self.forms: MixedForms = forms or MixedForms.assemble_forms(space.mesh, space)
        self.tables = AlikhanovKernels.build_kernel_tables(tmesh, problem.alpha)
        self.delta: float = delta

        self.__sigma_lu = None

    ###########################################################################

    def initialize(self) -> SolverState:
        """
        u^0 = P_h u0 and sigma^0 from (sigma^0, w) + (u^0, div w) = 0.

        :return: State at n = 0.
        :rtype: `SolverState`
        """

        space, forms = self.space, self.forms
        u0 = space.l2_project(self.problem.u0)
        rhs = -(forms.B.T @ u0.coefficients)

        if np.any(rhs):
            try:
                if self.__sigma_lu is None:
                    self.__sigma_lu = splu(sps.csc_matrix(forms.M_sigma))
                coeffs = self.__sigma_lu.solve(rhs)
            except RuntimeError as ex:
                raise SolverError(0, f"flux mass matrix is singular: {ex}") from ex
        else:
            coeffs = np.zeros(space.n_sigma)

        sigma0 = DiscreteField(space, FieldRole.FLUX, coeffs)
        keep = bool(self.problem.flags & SolverFlags.KEEP_FLUX_HISTORY)

        return SolverState(
            scalar_history=[u0],
            flux=sigma0,
            flux_history=[sigma0] if keep else None,
            max_norms=[space.max_abs_scalar(u0)],
        )

    ###########################################################################

    def assemble_step(self, state: SolverState, n: int) -> StepSystem:
        """
        Assemble the linear system of step n.

        :param state: State holding u^0..u^{n-1} and sigma^{n-1}.
        :type state: `SolverState`

        :param n: Step index, 1..N.
        :type n: `int`

        :return: Matrix and right-hand side.
        :rtype: `StepSystem`
        """

        if not (1 <= n <= self.tmesh.N):
            raise SolverError(n, f"step index outside 1..{self.tmesh.N}")
        if state.n != n - 1:
            raise SolverError(n, f"history ends at step {state.n}, need {n - 1}")

        space, forms, problem = self.space, self.forms, self.problem
        M_u, M_sigma, B = forms.M_u, forms.M_sigma, forms.B

        nu = problem.nu
        c = 1.0 - nu
        k_nn = float(self.tables.K[n, n])
        kappa2 = problem.scheme_kappa2

        u_prev = state.u.coefficients
        sigma_prev = state.flux.coefficients

        history = [field.coefficients for field in state.scalar_history]
        known = M_u @ self.tables.history_sum(history, n)

        # Scalar block and right-hand side of the second equation

        block_uu = (k_nn - c) * M_u
        rhs_u = (k_nn + nu) * (M_u @ u_prev) - known + kappa2 * nu * (B @ sigma_prev)

        if problem.is_nonlinear:
            values = space.scalar_values(u_prev)
            N_prev = space.weighted_scalar_mass(values**2)
            block_uu = block_uu + 3.0 * c * N_prev
            rhs_u = rhs_u - space.scalar_load(values**3) + 3.0 * c * (N_prev @ u_prev)

        if problem.source is not None:
            rhs_u = rhs_u + self.source_load(self.tmesh.offset_level(n))

        rhs_sigma = -nu * (M_sigma @ sigma_prev + B.T @ u_prev)

        matrix = sps.block_array(
            [[c * M_sigma, c * B.T], [-kappa2 * c * B, block_uu]], format="csc"
        )

        return StepSystem(
            n=n,
            matrix=matrix,
            rhs=np.concatenate([rhs_sigma, rhs_u]),
            n_sigma=space.n_sigma,
        )

    ###########################################################################

    def solve_step(
        self, system: StepSystem
    ) -> tuple[DiscreteField, DiscreteField, float]:
        """
        Direct sparse solve with a residual check.

        :param system: Assembled step.
        :type system: `StepSystem`

        :return: (sigma^n, u^n, relative residual).
        :rtype: `tuple[DiscreteField, DiscreteField, float]`

        :raises SolverError: on factorisation failure, a non-finite solution
            or a residual above `RESIDUAL_TOLERANCE`.
        """

        rhs_norm = float(np.linalg.norm(system.rhs))

        if rhs_norm == 0:
            x = np.zeros_like(system.rhs)
            residual = 0.0
        else:
            try:
                x = splu(sps.csc_matrix(system.matrix)).solve(system.rhs)
            except RuntimeError as ex:
                raise SolverError(system.n, f"factorisation failed: {ex}") from ex

            if not np.all(np.isfinite(x)):
                raise SolverError(system.n, "non-finite solution")

            residual = float(np.linalg.norm(system.matrix @ x - system.rhs)) / rhs_norm

            if residual > TfacSolver.RESIDUAL_TOLERANCE:
                raise SolverError(
                    system.n, f"relative residual {residual:.3e} above tolerance"
                )

        sigma = DiscreteField(self.space, FieldRole.FLUX, x[: system.n_sigma])
        u = DiscreteField(self.space, FieldRole.SCALAR, x[system.n_sigma :])

        return sigma, u, residual

    ###########################################################################

    def run(self) -> SolverState:
        """
        Initialise, then assemble and solve n = 1..N. Records the max-norm
        proxy of every step and checks the largest step against dt* with
        L* = 6 + 27 * (max norm)^4 (a violation is flagged, not fatal).

        :return: Completed trajectory with diagnostics.
        :rtype: `SolverState`

        :raises SolverError: when a step fails or produces NaN/inf.
        """

        state = self.initialize()

        for n in range(1, self.tmesh.N + 1):
            sigma, u, residual = self.solve_step(self.assemble_step(state, n))

            if not (sigma.is_finite() and u.is_finite()):
                raise SolverError(n, "non-finite field")

            max_norm = self.space.max_abs_scalar(u)
            state.accept(sigma, u, residual, max_norm)

            logger.debug(
                "Step %d: t = %.6g, residual %.3e, max|u| %.6g",
                n,
                self.tmesh.nodes[n],
                residual,
                max_norm,
            )

        state.L_star = 6.0 + 27.0 * state.max_norm() ** 4
        state.restriction = self.tmesh.step_restriction(
            self.problem.alpha, state.L_star, self.delta
        )

        if not state.restriction.satisfied:
            logger.warning(
                "Max step %.3e exceeds dt* = %.3e (L* = %.4g)",
                state.restriction.max_step,
                state.restriction.dt_star,
                state.L_star,
            )

        logger.info(
            "Completed %d steps, max|u| = %.6g, dt* = %.3e",
            self.tmesh.N,
            state.max_norm(),
            state.restriction.dt_star,
        )

        return state

    ###########################################################################

    def source_load(self, t: float) -> np.ndarray:
        """
        :param t: Time at which the source is evaluated.
        :type t: `float`

        :return: (source(., t), v) for every scalar basis function.
        :rtype: `np.ndarray`
        """

        points = self.space.quad_points
        values = np.broadcast_to(
            np.asarray(self.problem.source(points[..., 0], points[..., 1], t)),
            points.shape[:2],
        )

        return self.space.scalar_load(values)

    ###########################################################################

    def temporal_residual(self, state: SolverState, n: int) -> float:
        """
        Re-evaluate the scalar equation of step n with the discrete Caputo
        operator applied to the stored history and return its residual
        relative to the size of the time-derivative term.

        :param state: Trajectory containing steps 0..n and sigma^{n-1},
            sigma^n.
        :type state: `SolverState`

        :param n: Step index, 1..state.n.
        :type n: `int`

        :return: Relative residual.
        :rtype: `float`
        """

        if not (1 <= n <= state.n):
            raise SolverError(n, f"step outside the stored history 1..{state.n}")

        space, forms, problem = self.space, self.forms, self.problem
        nu = problem.nu

        history = [field.coefficients for field in state.scalar_history[: n + 1]]
        u_now, u_prev = history[n], history[n - 1]
        sigma_offset = nu * state.flux_at(n - 1).coefficients + (
            1.0 - nu
        ) * state.flux_at(n).coefficients

        caputo = forms.M_u @ self.tables.discrete_caputo(history, n)
        rhs = forms.M_u @ (nu * u_prev + (1.0 - nu) * u_now)

        if problem.is_nonlinear:
            values = space.scalar_values(u_prev)
            rhs = rhs - space.scalar_load(values**3)
            rhs = rhs - 3.0 * (1.0 - nu) * space.scalar_load(
                values**2 * space.scalar_values(u_now - u_prev)
            )

        if problem.source is not None:
            rhs = rhs + self.source_load(self.tmesh.offset_level(n))

        residual = caputo - problem.scheme_kappa2 * (forms.B @ sigma_offset) - rhs
        scale = max(float(np.linalg.norm(caputo)), float(np.linalg.norm(rhs)), 1e-300)

        return float(np.linalg.norm(residual)) / scale


###############################################################################
