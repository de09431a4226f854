###############################################################################
# tfac (C) tfac contributors 2026
#
# Measurements against manufactured solutions: weighted error norms, refinement
# studies with log-ratio rates, the truncation error of the discrete Caputo
# operator and the remainder of the Newton linearization
###############################################################################

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
import logging
import math
from typing import Callable, Sequence

import numpy as np
from scipy.special import gamma as gamma_fn

from tfac.alikhanov_kernels import AlikhanovKernels
from tfac.convergence_report import ConvergenceReport, ConvergenceRow
from tfac.coupling_rule import CouplingRule
from tfac.errors import KernelInvariantError, ParameterDomainError, SolverError
from tfac.graded_time_mesh import GradedTimeMesh
from tfac.manufactured_case import ManufacturedCase
from tfac.mixed_space import MixedSpace
from tfac.rate_report import RateReport
from tfac.solver_flags import SolverFlags
from tfac.solver_state import SolverState
from tfac.tfac_solver import TfacSolver
from tfac.triangle_mesh import TriangleMesh

logger = logging.getLogger(__name__)

TimeFunction = Callable[[np.ndarray], np.ndarray]
TimeProfile = tuple[TimeFunction, TimeFunction]

###############################################################################
# Implementation
###############################################################################


class VerificationHarness:
    @staticmethod
    def default_gamma(alpha: float) -> float:
        """Grading 2 / alpha + 0.1 used by the reference experiments"""

        return 2.0 / alpha + 0.1

    ###########################################################################

    @staticmethod
    def weighted_errors(
        state: SolverState,
        case: ManufacturedCase,
        tmesh: GradedTimeMesh,
        space: MixedSpace,
        alpha: float,
    ) -> tuple[float, float]:
        """
        Largest t_n^(alpha/2)-weighted L2 errors over n = 1..N of the scalar
        against u(t_n) and of the flux against grad u(t_n).

        :param state: Completed trajectory with the flux history kept.
        :type state: `SolverState`

        :param case: Exact solution.
        :type case: `ManufacturedCase`

        :param tmesh: Temporal mesh of the run.
        :type tmesh: `GradedTimeMesh`

        :param space: Mixed space of the run.
        :type space: `MixedSpace`

        :param alpha: Fractional order.
        :type alpha: `float`

        :return: (E_u, E_sigma).
        :rtype: `tuple[float, float]`
        """

        if state.n != tmesh.N:
            raise ValueError(f"Trajectory ends at step {state.n}, mesh has {tmesh.N}")

        E_u = E_sigma = 0.0

        for n in range(1, tmesh.N + 1):
            t = float(tmesh.nodes[n])
            weight = t ** (alpha / 2.0)

            err_u = space.l2_error(
                state.scalar_history[n], lambda x, y: case.exact_u(x, y, t, alpha)
            )
            err_sigma = space.l2_error(
                state.flux_at(n), lambda x, y: case.exact_sigma(x, y, t, alpha)
            )

            E_u = max(E_u, weight * err_u)
            E_sigma = max(E_sigma, weight * err_sigma)

        return E_u, E_sigma

    ###########################################################################

    @staticmethod
    def convergence_study(
        case: ManufacturedCase,
        alpha: float,
        N_list: Sequence[int],
        coupling: CouplingRule = CouplingRule.DEFAULT,
        order: int = 1,
        gamma: float | None = None,
        nu: float | None = None,
        h: float | None = None,
        flags: SolverFlags = SolverFlags.DEFAULT,
        workers: int = 0,
    ) -> ConvergenceReport:
        """
        Run the solver for every N, measure the weighted errors and attach
        the rates between consecutive rows.

        :param case: Manufactured case.
        :type case: `ManufacturedCase`

        :param alpha: Fractional order.
        :type alpha: `float`

        :param N_list: Strictly increasing numbers of steps.
        :type N_list: `Sequence[int]`

        :param coupling: Rule giving the spatial mesh for each N.
        :type coupling: `CouplingRule`

        :param order: Element order k.
        :type order: `int`

        :param gamma: Grading (2 / alpha + 0.1 when omitted).
        :type gamma: `float` | `None`

        :param nu: Offset (alpha / 2 when omitted).
        :type nu: `float` | `None`

        :param h: Nominal mesh size of the fixed coupling.
        :type h: `float` | `None`

        :param flags: Solver switches (the flux history is always kept).
        :type flags: `SolverFlags`

        :param workers: Parallel processes; 0 or 1 runs the rows in turn.
        :type workers: `int`

        :return: Report with one row per N; a failed run poisons its row only.
        :rtype: `ConvergenceReport`
        """

        N_list = [int(N) for N in N_list]

        if not N_list or any(b <= a for a, b in zip(N_list, N_list[1:])):
            raise ParameterDomainError("N", f"must be strictly increasing: {N_list}")

        gamma = VerificationHarness.default_gamma(alpha) if gamma is None else gamma
        coupling = CouplingRule(coupling)
        flags = SolverFlags(flags) | SolverFlags.KEEP_FLUX_HISTORY

        # Fail early on a coupling without a usable mesh size

        width = case.domain[1] - case.domain[0]
        cells = [coupling.cells(N, h, width) for N in N_list]

        jobs = [
            (case.name, case.kappa, case.T, alpha, N, nx, order, gamma, nu, int(flags))
            for N, nx in zip(N_list, cells)
        ]

        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as executor:
                rows = list(executor.map(VerificationHarness.run_row, *zip(*jobs)))
        else:
            rows = [VerificationHarness.run_row(*job) for job in jobs]

        report = ConvergenceReport.from_rows(
            case.name, alpha, gamma, coupling.value, rows
        )

        logger.info(
            "Study of case %s at alpha = %g: %d rows, %d failed",
            case.name,
            alpha,
            len(rows),
            sum(not row.ok for row in rows),
        )

        return report

    ###########################################################################

    @staticmethod
    def run_row(
        case_name: str,
        kappa: float,
        T: float,
        alpha: float,
        N: int,
        nx: int,
        order: int,
        gamma: float,
        nu: float | None,
        flags: int,
    ) -> ConvergenceRow:
        """
        One run of a study, addressed by plain values so that it can be
        shipped to a worker process.

        :return: Row without rates; failures are reported in `error`.
        :rtype: `ConvergenceRow`
        """

        case = ManufacturedCase.get_case(case_name).with_parameters(kappa, T)
        nu = alpha / 2.0 if nu is None else nu
        tmesh = GradedTimeMesh(case.T, N, gamma, nu)

        try:
            mesh = TriangleMesh.build_structured_mesh(case.domain, nx, nx)
            space = MixedSpace(mesh, order)
            problem = case.problem(alpha, nu, SolverFlags(flags))
            state = TfacSolver(problem, tmesh, space).run()
            E_u, E_sigma = VerificationHarness.weighted_errors(
                state, case, tmesh, space, alpha
            )
        except (SolverError, KernelInvariantError, ValueError) as ex:
            logger.error("Case %s, N = %d failed: %s", case_name, N, ex)
            return ConvergenceRow(
                alpha=alpha,
                gamma=gamma,
                N=N,
                h=math.nan,
                dt_max=tmesh.max_step,
                error=str(ex),
            )

        logger.info(
            "Case %s, N = %d, h = %.4g: E_u = %.3e, E_sigma = %.3e",
            case_name,
            N,
            mesh.h,
            E_u,
            E_sigma,
        )

        return ConvergenceRow(
            alpha=alpha,
            gamma=gamma,
            N=N,
            h=mesh.h,
            dt_max=tmesh.max_step,
            dt_star=state.restriction.dt_star,
            E_u=E_u,
            E_sigma=E_sigma,
        )

    ###########################################################################

    @staticmethod
    def power_profile(beta: float, alpha: float) -> TimeProfile:
        """
        :param beta: Exponent of phi(t) = t^beta, beta > 0.
        :type beta: `float`

        :param alpha: Fractional order.
        :type alpha: `float`

        :return: phi and its exact Caputo derivative
            Gamma(1 + beta) / Gamma(1 + beta - alpha) t^(beta - alpha).
        :rtype: `tuple[Callable, Callable]`
        """

        if not (beta > 0):
            raise ParameterDomainError("beta", f"must be positive, got {beta}")

        scale = gamma_fn(1.0 + beta) / gamma_fn(1.0 + beta - alpha)

        return (
            lambda t: np.power(t, beta),
            lambda t: scale * np.power(t, beta - alpha),
        )

    ###########################################################################

    @staticmethod
    def measure_upsilon(
        alpha: float,
        gamma: float,
        N_list: Sequence[int],
        profile: TimeProfile | None = None,
        nu: float | None = None,
        T: float = 1.0,
    ) -> RateReport:
        """
        Truncation error Upsilon^{n-nu} = D phi(t_{n-nu}) - Caputo phi(t_{n-nu})
        of the discrete operator. The fitted quantity is
        max_n t_{n-nu}^alpha |Upsilon^{n-nu}|; the raw maximum and the
        P-weighted sum max_n sum_j P[n,j] |Upsilon^{j-nu}| / log(n + 2) are
        reported as extras.

        :param alpha: Fractional order.
        :type alpha: `float`

        :param gamma: Grading parameter.
        :type gamma: `float`

        :param N_list: Increasing numbers of steps.
        :type N_list: `Sequence[int]`

        :param profile: phi and its exact Caputo derivative (t^alpha when
            omitted).
        :type profile: `tuple[Callable, Callable]` | `None`

        :param nu: Offset (alpha / 2 when omitted).
        :type nu: `float` | `None`

        :param T: Final time.
        :type T: `float`

        :return: Orders in N against min(gamma alpha, 2).
        :rtype: `RateReport`
        """

        phi, caputo = profile or VerificationHarness.power_profile(alpha, alpha)
        nu = alpha / 2.0 if nu is None else nu

        weighted, raw, p_sums = [], [], []

        for N in N_list:
            tmesh = GradedTimeMesh(T, N, gamma, nu)
            tables = AlikhanovKernels.build_kernel_tables(tmesh, alpha)
            history = phi(np.asarray(tmesh.nodes))
            levels = np.asarray(tmesh.offset_levels)

            discrete = np.array(
                [tables.discrete_caputo(history, n) for n in range(1, N + 1)]
            )
            upsilon = np.abs(discrete - caputo(levels))

            weighted.append(float(np.max(levels**alpha * upsilon)))
            raw.append(float(np.max(upsilon)))

            sums = tables.P[1:, 1:] @ upsilon
            p_sums.append(float(np.max(sums / np.log(np.arange(1, N + 1) + 2.0))))

        report = RateReport(
            quantity="max t^alpha |Upsilon|",
            N=tuple(int(N) for N in N_list),
            values=tuple(weighted),
            expected=min(gamma * alpha, 2.0),
            extras={"raw": tuple(raw), "p_sum": tuple(p_sums)},
        )

        logger.info(
            "Truncation at alpha = %g, gamma = %.4g: orders %s, expected %.3g",
            alpha,
            gamma,
            VerificationHarness.__format_orders(report),
            report.expected,
        )

        return report

    ###########################################################################

    @staticmethod
    def newton_remainder(
        u_prev: np.ndarray, u_now: np.ndarray, nu: float
    ) -> np.ndarray:
        """
        Remainder (u^{n-nu} - u^{n-1})^2 (u^{n-nu} + 2 u^{n-1}) left by
        replacing (u^{n-nu})^3 with its Newton linearization about u^{n-1}.

        :param u_prev: Values of u^{n-1}.
        :type u_prev: `np.ndarray`

        :param u_now: Values of u^n.
        :type u_now: `np.ndarray`

        :param nu: Offset.
        :type nu: `float`

        :return: Pointwise remainder.
        :rtype: `np.ndarray`
        """

        u_offset = nu * u_prev + (1.0 - nu) * u_now
        jump = u_offset - u_prev

        return jump * jump * (u_offset + 2.0 * u_prev)

    ###########################################################################

    @staticmethod
    def measure_newton_remainder(
        case: ManufacturedCase,
        alpha: float,
        gamma: float,
        N_list: Sequence[int],
        nu: float | None = None,
        cells: int = 16,
    ) -> RateReport:
        """
        L2 norm of the Newton remainder of the exact solution at every step.
        The fitted quantity is the remainder at n = N; the maximum over n and
        the whole profile are reported as extras.

        :param case: Exact solution.
        :type case: `ManufacturedCase`

        :param alpha: Fractional order.
        :type alpha: `float`

        :param gamma: Grading parameter.
        :type gamma: `float`

        :param N_list: Increasing numbers of steps.
        :type N_list: `Sequence[int]`

        :param nu: Offset (alpha / 2 when omitted).
        :type nu: `float` | `None`

        :param cells: Cells along each axis of the quadrature mesh.
        :type cells: `int`

        :return: Decay orders in N.
        :rtype: `RateReport`
        """

        nu = alpha / 2.0 if nu is None else nu
        mesh = TriangleMesh.build_structured_mesh(case.domain, cells, cells)
        space = MixedSpace(mesh, order=0)
        x, y = space.quad_points[..., 0], space.quad_points[..., 1]
        weights = space.quad_weights

        finals, maxima, profiles = [], [], []

        for N in N_list:
            tmesh = GradedTimeMesh(case.T, N, gamma, nu)
            u = [case.exact_u(x, y, float(t), alpha) for t in tmesh.nodes]

            norms = np.empty(N)

            for n in range(1, N + 1):
                remainder = VerificationHarness.newton_remainder(u[n - 1], u[n], nu)
                norms[n - 1] = math.sqrt(float((remainder**2 * weights).sum()))

            finals.append(float(norms[-1]))
            maxima.append(float(norms.max()))
            profiles.append(tuple(norms.tolist()))

        report = RateReport(
            quantity="||Newton remainder|| at n = N",
            N=tuple(int(N) for N in N_list),
            values=tuple(finals),
            expected=2.0,
            extras={"max": tuple(maxima), "profile": tuple(profiles)},
        )

        logger.info(
            "Newton remainder of case %s: orders %s",
            case.name,
            VerificationHarness.__format_orders(report),
        )

        return report

    ###########################################################################

    @staticmethod
    def __format_orders(report: RateReport) -> str:
        return ", ".join(
            "-" if order is None else f"{order:.3f}" for order in report.orders
        )


###############################################################################
