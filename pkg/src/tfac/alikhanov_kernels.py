###############################################################################
# tfac (C) tfac contributors 2026
#
# Nonuniform Alikhanov (L2-1sigma) approximation of the Caputo derivative:
# closed-form coefficients a[n, j] and b[n, j], discrete kernels K[n, j], the
# complementary kernels P[n, j] and executable checks of the kernel
# properties the stability analysis relies on
#
# The weight kernel is omega_{1-alpha}(t) = t^(-alpha) / Gamma(1 - alpha).
# Differences of powers are evaluated as x^p * (1 - (1 - r)^p) through
# expm1/log1p, which keeps full relative accuracy for clustered nodes
###############################################################################

from __future__ import annotations

from dataclasses import dataclass
import functools
import logging
import math
from typing import TYPE_CHECKING, ClassVar

import numpy as np
from scipy.special import gamma as gamma_fn, gammaln

from tfac.check_status import CheckStatus
from tfac.errors import KernelInvariantError, ParameterDomainError
from tfac.kernel_tables import KernelTables
from tfac.mittag_leffler import MittagLeffler

if TYPE_CHECKING:
    from tfac.graded_time_mesh import GradedTimeMesh

logger = logging.getLogger(__name__)

###############################################################################


@dataclass(frozen=True)
class KernelCheck:
    """Outcome of one kernel property check"""

    item: str
    """Property label, (a) through (g)"""

    status: CheckStatus
    """Verdict"""

    slack: float
    """Worst relative slack (bound - value) / bound; negative means violated"""

    detail: str = ""
    """Where the worst case occurred"""


###############################################################################
# Implementation
###############################################################################


class AlikhanovKernels:
    PI_A: ClassVar[float] = 11.0 / 4.0
    """Constant bounding the complementary kernels"""

    CHECK_TOLERANCE: ClassVar[float] = 1.0e-12
    """Relative slack tolerated before a property check is declared failed"""

    IDENTITY_TOLERANCE: ClassVar[float] = 1.0e-10
    """Absolute tolerance of the summation identity sum_j P[n,j] K[j,i] = 1"""

    ML_SAMPLES: ClassVar[tuple[float, ...]] = (0.5, 1.0, 2.0, 5.0)
    """Positive constants sampled by the Mittag-Leffler sum check"""

    BETA_SAMPLES: ClassVar[tuple[float, ...]] = (0.25, 0.5, 0.75)
    """Exponents sampled by the weighted power check"""

    SERIES_THRESHOLD: ClassVar[float] = 0.1
    """Below this step-to-distance ratio b is evaluated by its power series"""

    SERIES_TERMS: ClassVar[int] = 40
    """Number of power-series terms used below the threshold"""

    ###########################################################################

    @staticmethod
    def omega(beta: float, t):
        """
        Riemann-Liouville kernel omega_beta(t) = t^(beta - 1) / Gamma(beta).

        :param beta: Positive order.
        :type beta: `float`

        :param t: Positive argument(s).
        :type t: `float` | `np.ndarray`

        :return: Kernel value(s).
        :rtype: `float` | `np.ndarray`
        """

        return np.power(t, beta - 1.0) / gamma_fn(beta)

    ###########################################################################

    @staticmethod
    def coeff_a(mesh: GradedTimeMesh, alpha: float, n: int, j: int) -> float:
        """
        a[n, j] = (1/dt_j) * integral over (t_{j-1}, min(t_{n-nu}, t_j)) of
        omega_{1-alpha}(t_{n-nu} - s) ds.

        :param mesh: Temporal mesh.
        :type mesh: `GradedTimeMesh`

        :param alpha: Fractional order in (0, 1).
        :type alpha: `float`

        :param n: Row index, 1..N.
        :type n: `int`

        :param j: Column index, 1..n.
        :type j: `int`

        :return: Coefficient value.
        :rtype: `float`
        """

        AlikhanovKernels.__check_alpha(alpha)

        if not (1 <= j <= n <= mesh.N):
            raise ParameterDomainError("j", f"a[{n},{j}] needs 1 <= j <= n <= N")

        return float(AlikhanovKernels.__row_a(mesh, alpha, n)[j - 1])

    ###########################################################################

    @staticmethod
    def coeff_b(mesh: GradedTimeMesh, alpha: float, n: int, j: int) -> float:
        """
        b[n, j] = 1 / (dt_j (dt_j + dt_{j+1})) * integral over (t_{j-1}, t_j)
        of (s - t_{j-1}) (t_j - s) d/ds omega_{1-alpha}(t_{n-nu} - s) ds.

        :param mesh: Temporal mesh.
        :type mesh: `GradedTimeMesh`

        :param alpha: Fractional order in (0, 1).
        :type alpha: `float`

        :param n: Row index, 2..N.
        :type n: `int`

        :param j: Column index, 1..n-1.
        :type j: `int`

        :return: Coefficient value (positive).
        :rtype: `float`
        """

        AlikhanovKernels.__check_alpha(alpha)

        if not (1 <= j < n <= mesh.N):
            raise ParameterDomainError("j", f"b[{n},{j}] needs 1 <= j < n <= N")

        return float(AlikhanovKernels.__row_b(mesh, alpha, n)[j - 1])

    ###########################################################################

    @staticmethod
    def build_kernel_tables(mesh: GradedTimeMesh, alpha: float) -> KernelTables:
        """
        Build (or fetch from the cache) the kernel tables of a mesh.

        :param mesh: Temporal mesh.
        :type mesh: `GradedTimeMesh`

        :param alpha: Fractional order in (0, 1).
        :type alpha: `float`

        :return: Immutable tables shared by every caller with the same inputs.
        :rtype: `KernelTables`

        :raises KernelInvariantError: if a kernel is not positive or the
            kernels of a row are not increasing in j.
        """

        AlikhanovKernels.__check_alpha(alpha)

        return AlikhanovKernels.__build_cached(mesh, float(alpha))

    ###########################################################################

    @staticmethod
    def check_kernel_properties(
        tables: KernelTables, mesh: GradedTimeMesh | None = None
    ) -> list[KernelCheck]:
        """
        Evaluate the kernel properties (a)-(g) used by the stability and
        convergence analysis and report each with its worst relative slack.

        :param tables: Tables to inspect.
        :type tables: `KernelTables`

        :param mesh: Mesh the tables were built on (default: the tables' own).
        :type mesh: `GradedTimeMesh` | `None`

        :return: One record per item, in order (a)..(g).
        :rtype: `list[KernelCheck]`
        """

        mesh = mesh or tables.mesh

        if mesh != tables.mesh:
            raise ValueError(f"Tables were built on {tables.mesh!r}, not {mesh!r}")

        checks = [
            AlikhanovKernels.__check_a(tables),
            AlikhanovKernels.__check_b(tables),
            AlikhanovKernels.__check_c(tables),
            AlikhanovKernels.__check_d(tables),
            AlikhanovKernels.__check_e(tables),
            AlikhanovKernels.__check_f(tables),
            AlikhanovKernels.__check_g(tables),
        ]

        for check in checks:
            log = logger.warning if check.status.is_failure else logger.debug
            log(
                "Kernel check %s: %s, slack %.3e",
                check.item,
                check.status.name,
                check.slack,
            )

        return checks

    ###########################################################################

    @staticmethod
    @functools.lru_cache(maxsize=64)
    def __build_cached(mesh: GradedTimeMesh, alpha: float) -> KernelTables:
        N = mesh.N

        if mesh.gamma > 4.0 / alpha:
            logger.warning(
                "gamma = %s exceeds 4/alpha = %s: truncation rate is not covered",
                mesh.gamma,
                4.0 / alpha,
            )

        a = np.zeros((N + 1, N + 1))
        b = np.zeros((N + 1, N + 1))
        K = np.zeros((N + 1, N + 1))

        for n in range(1, N + 1):
            a[n, 1 : n + 1] = AlikhanovKernels.__row_a(mesh, alpha, n)

            if n == 1:
                K[1, 1] = a[1, 1]
                continue

            b[n, 1:n] = AlikhanovKernels.__row_b(mesh, alpha, n)

            # mu_j = dt_j / dt_{j-1} for j = 2..n

            mu = mesh.ratios[: n - 1]

            K[n, 1 : n + 1] = a[n, 1 : n + 1]
            K[n, 1:n] -= b[n, 1:n]
            K[n, 2 : n + 1] += b[n, 1:n] / mu

        AlikhanovKernels.__verify_kernels(K)

        P = AlikhanovKernels.__complementary(K)

        logger.info("Built kernel tables for %r, alpha = %s", mesh, alpha)

        return KernelTables(alpha, mesh, K, P, a, b)

    ###########################################################################

    @staticmethod
    def __check_alpha(alpha: float):
        if not (0 < alpha < 1):
            raise ParameterDomainError("alpha", f"must lie in (0, 1), got {alpha}")

    ###########################################################################

    @staticmethod
    def __complementary(K: np.ndarray) -> np.ndarray:
        N = K.shape[0] - 1
        P = np.zeros_like(K)

        # Backward recursion: P[n,n] = 1/K[n,n] and
        # P[n,i] = sum_{j>i} P[n,j] (K[j,i+1] - K[j,i]) / K[i,i]

        for n in range(1, N + 1):
            P[n, n] = 1.0 / K[n, n]

            for i in range(n - 1, 0, -1):
                jumps = K[i + 1 : n + 1, i + 1] - K[i + 1 : n + 1, i]
                P[n, i] = np.dot(P[n, i + 1 : n + 1], jumps) / K[i, i]

        return P

    ###########################################################################

    @staticmethod
    def __power_drop(x: np.ndarray, r: np.ndarray, p: float) -> np.ndarray:
        """x^p - (x (1 - r))^p for 0 < r <= 1 without cancellation"""

        with np.errstate(divide="ignore"):
            return -np.power(x, p) * np.expm1(p * np.log1p(-r))

    ###########################################################################

    @staticmethod
    def __row_a(mesh: GradedTimeMesh, alpha: float, n: int) -> np.ndarray:
        t_offset = mesh.offset_levels[n - 1]
        steps = mesh.steps[:n]
        x = t_offset - mesh.nodes[:n]

        # The integration interval of the last column ends at t_{n-nu}

        r = steps / x
        r[-1] = 1.0

        drop = AlikhanovKernels.__power_drop(x, r, 1.0 - alpha)

        return drop / (gamma_fn(2.0 - alpha) * steps)

    ###########################################################################

    @staticmethod
    def __row_b(mesh: GradedTimeMesh, alpha: float, n: int) -> np.ndarray:
        q = 2.0 - alpha
        t_offset = mesh.offset_levels[n - 1]
        steps = mesh.steps[: n - 1]
        next_steps = mesh.steps[1:n]
        x = t_offset - mesh.nodes[: n - 1]
        r = steps / x

        # Integration by parts gives x^q / Gamma(1 + q) * phi(r) with
        # phi(r) = 2 (1 - (1 - r)^q) - q r (1 + (1 - r)^(q - 1))

        phi = np.empty_like(r)
        small = r < AlikhanovKernels.SERIES_THRESHOLD

        if np.any(~small):
            rr = r[~small]
            log_rest = np.log1p(-rr)
            phi[~small] = -2.0 * np.expm1(q * log_rest) - q * rr * (
                1.0 + np.exp((q - 1.0) * log_rest)
            )

        if np.any(small):
            phi[small] = AlikhanovKernels.__phi_series(r[small], q)

        integral = np.exp(q * np.log(x) - gammaln(1.0 + q)) * phi

        return integral / (steps * (steps + next_steps))

    ###########################################################################

    @staticmethod
    def __phi_series(r: np.ndarray, q: float) -> np.ndarray:
        """sum_{k>=3} (k - 2) binom(q, k) (-r)^k"""

        binom = q * (q - 1.0) * (q - 2.0) / 6.0
        power = -(r**3)
        total = binom * power

        for k in range(4, AlikhanovKernels.SERIES_TERMS + 3):
            binom *= (q - k + 1.0) / k
            power = -power * r
            total = total + (k - 2) * binom * power

        return total

    ###########################################################################

    @staticmethod
    def __verify_kernels(K: np.ndarray):
        N = K.shape[0] - 1

        for n in range(1, N + 1):
            row = K[n, 1 : n + 1]

            if not np.all(np.isfinite(row)) or np.any(row <= 0):
                j = int(np.argmax(~(np.isfinite(row) & (row > 0)))) + 1
                raise KernelInvariantError(n, j, f"not positive ({K[n, j]!r})")

            rising = np.diff(row) > 0

            if not np.all(rising):
                j = int(np.argmin(rising)) + 2
                raise KernelInvariantError(
                    n, j, f"not above K[{n},{j - 1}] ({K[n, j]!r})"
                )

    ###########################################################################

    @staticmethod
    def __status(slack: float) -> CheckStatus:
        if slack >= -AlikhanovKernels.CHECK_TOLERANCE:
            return CheckStatus.PASSED

        return CheckStatus.FAILED

    ###########################################################################

    @staticmethod
    def __worst(values: np.ndarray, bounds: np.ndarray, labels) -> tuple[float, str]:
        slack = (bounds - values) / np.abs(bounds)
        index = int(np.argmin(slack))

        return float(slack[index]), labels(index)

    ###########################################################################

    @staticmethod
    def __check_a(tables: KernelTables) -> KernelCheck:
        mesh, alpha = tables.mesh, tables.alpha
        rows, cols = np.tril_indices(mesh.N + 1, k=0)
        keep = cols >= 1
        rows, cols = rows[keep], cols[keep]

        values = tables.P[rows, cols]
        bounds = (
            AlikhanovKernels.PI_A
            * gamma_fn(2.0 - alpha)
            * np.power(mesh.steps[cols - 1], alpha)
        )

        slack, where = AlikhanovKernels.__worst(
            values, bounds, lambda i: f"P[{rows[i]},{cols[i]}]"
        )

        positive = bool(np.all(values > 0)) and bool(np.all(tables.K[rows, cols] > 0))
        monotone = all(
            np.all(np.diff(tables.K[n, 1 : n + 1]) > 0) for n in range(2, mesh.N + 1)
        )

        if not (positive and monotone):
            return KernelCheck("a", CheckStatus.FAILED, min(slack, -1.0), where)

        return KernelCheck("a", AlikhanovKernels.__status(slack), slack, where)

    ###########################################################################

    @staticmethod
    def __check_b(tables: KernelTables) -> KernelCheck:
        N = tables.N

        # (P K)[n, i] over the lower triangle must equal 1

        product = tables.P[1:, 1:] @ tables.K[1:, 1:]
        rows, cols = np.tril_indices(N)
        deviation = np.abs(product[rows, cols] - 1.0)
        index = int(np.argmax(deviation))
        worst = float(deviation[index])
        tolerance = AlikhanovKernels.IDENTITY_TOLERANCE
        slack = (tolerance - worst) / tolerance
        status = CheckStatus.PASSED if worst <= tolerance else CheckStatus.FAILED

        return KernelCheck(
            "b", status, slack, f"n={rows[index] + 1}, i={cols[index] + 1}"
        )

    ###########################################################################

    @staticmethod
    def __check_c(tables: KernelTables) -> KernelCheck:
        alpha, nodes = tables.alpha, tables.mesh.nodes
        P = tables.P[1:, 1:]
        worst, where = math.inf, ""

        for m in range(int(math.floor(1.0 / alpha)) + 1):
            values = P @ AlikhanovKernels.omega(1.0 + (m - 1) * alpha, nodes[1:])
            bounds = AlikhanovKernels.PI_A * AlikhanovKernels.omega(
                1.0 + m * alpha, nodes[1:]
            )
            slack, label = AlikhanovKernels.__worst(
                values, bounds, lambda i: f"m={m}, n={i + 1}"
            )

            if slack < worst:
                worst, where = slack, label

        return KernelCheck("c", AlikhanovKernels.__status(worst), worst, where)

    ###########################################################################

    @staticmethod
    def __check_d(tables: KernelTables) -> KernelCheck:
        mesh, alpha = tables.mesh, tables.alpha

        if mesh.N < 2:
            return KernelCheck("d", CheckStatus.VACUOUS, math.inf)

        if np.any(np.diff(mesh.steps) < -mesh.STEP_TOLERANCE * mesh.T):
            return KernelCheck(
                "d", CheckStatus.HYPOTHESIS_UNMET, math.nan, "steps decrease"
            )

        worst, where = math.inf, ""
        nodes = mesh.nodes

        for sample in AlikhanovKernels.ML_SAMPLES:
            # Scale so that the largest argument equals the sample

            c = sample / mesh.T**alpha

            try:
                ml = np.array(
                    [MittagLeffler.evaluate(alpha, c * t**alpha) for t in nodes[1:]]
                )
            except OverflowError:
                continue

            for n in range(2, mesh.N + 1):
                value = c * np.dot(tables.P[n, 1:n], ml[: n - 1])
                bound = AlikhanovKernels.PI_A * (ml[n - 1] - 1.0)
                slack = (bound - value) / bound

                if slack < worst:
                    worst, where = slack, f"c={c:.4g}, n={n}"

        if math.isinf(worst):
            return KernelCheck("d", CheckStatus.VACUOUS, worst, "no sample evaluated")

        return KernelCheck("d", AlikhanovKernels.__status(worst), worst, where)

    ###########################################################################

    @staticmethod
    def __check_e(tables: KernelTables) -> KernelCheck:
        alpha, nodes = tables.alpha, tables.mesh.nodes
        P = tables.P[1:, 1:]
        worst, where = math.inf, ""

        for beta in AlikhanovKernels.BETA_SAMPLES:
            values = P @ np.power(nodes[1:], beta - alpha)
            factor = (
                AlikhanovKernels.PI_A
                * gamma_fn(1.0 + beta - alpha)
                / gamma_fn(1.0 + beta)
            )
            bounds = factor * np.power(nodes[1:], beta)
            slack, label = AlikhanovKernels.__worst(
                values, bounds, lambda i: f"beta={beta}, n={i + 1}"
            )

            if slack < worst:
                worst, where = slack, label

        return KernelCheck("e", AlikhanovKernels.__status(worst), worst, where)

    ###########################################################################

    @staticmethod
    def __check_f(tables: KernelTables) -> KernelCheck:
        mesh, alpha = tables.mesh, tables.alpha
        n = np.arange(1, mesh.N + 1)
        values = tables.P[1:, 1:] @ np.power(mesh.nodes[1:], -alpha)
        bounds = 4.0 * AlikhanovKernels.PI_A * math.exp(mesh.gamma) * np.log(n + 2.0)
        slack, where = AlikhanovKernels.__worst(values, bounds, lambda i: f"n={i + 1}")

        return KernelCheck("f", AlikhanovKernels.__status(slack), slack, where)

    ###########################################################################

    @staticmethod
    def __check_g(tables: KernelTables) -> KernelCheck:
        mesh, alpha = tables.mesh, tables.alpha

        if mesh.N < 2:
            return KernelCheck("g", CheckStatus.VACUOUS, math.inf)

        n = np.arange(2, mesh.N + 1)
        values = tables.P[n, n] / tables.P[n, n - 1]
        bounds = (2.0 - alpha) / alpha * np.power(mesh.ratios, alpha)
        slack, where = AlikhanovKernels.__worst(values, bounds, lambda i: f"n={i + 2}")

        return KernelCheck("g", AlikhanovKernels.__status(slack), slack, where)


###############################################################################
