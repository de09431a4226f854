###############################################################################
# tfac (C) tfac contributors 2026
#
# Synthetic instances of the discrete fractional Gronwall inequality:
# non-negative forcing sequences xi, eta, zeta, coefficient rows lambda^n_i
# and a sequence v obtained by running the hypothesis
#
#   sum_j K[n,j] ((v^j)^2 - (v^{j-1})^2)
#       <= sum_i lambda^n_i (v^i)^2 + v^{n-nu} xi^n + (eta^n)^2 + (zeta^n)^2
#
# forward at equality, which is the adversarial case for the bound
###############################################################################

from dataclasses import dataclass
import math

import numpy as np
from scipy.special import gamma as gamma_fn

from tfac.alikhanov_kernels import AlikhanovKernels
from tfac.errors import ParameterDomainError
from tfac.kernel_tables import KernelTables

###############################################################################
# Implementation
###############################################################################


@dataclass(frozen=True, eq=False)
class GronwallInstance:
    tables: KernelTables
    """Kernel tables of the mesh (they also carry alpha and the mesh)"""

    v: np.ndarray
    """v^0..v^N"""

    xi: np.ndarray
    """xi^n at index n = 1..N (index 0 unused, zero)"""

    eta: np.ndarray
    """eta^n at index n = 1..N (index 0 unused, zero)"""

    zeta: np.ndarray
    """zeta^n at index n = 1..N (index 0 unused, zero)"""

    lam: np.ndarray
    """lam[n, i] = lambda^n_i for 0 <= i <= n, lower triangular"""

    Lambda: float
    """Bound on every row sum of lam"""

    delta: float = 2.0
    """Constant delta > 1 of the time-step condition"""

    ###########################################################################

    def __post_init__(self):
        N = self.tables.N

        for name in ("v", "xi", "eta", "zeta"):
            value = getattr(self, name)

            if value.shape != (N + 1,):
                raise ParameterDomainError(name, f"needs {N + 1} entries")
            if np.any(value < 0):
                raise ParameterDomainError(name, "entries must be non-negative")

        if self.lam.shape != (N + 1, N + 1) or np.any(self.lam < 0):
            raise ParameterDomainError("lambda", "needs non-negative (N+1)^2 rows")
        if not (self.delta > 1):
            raise ParameterDomainError("delta", f"must exceed 1, got {self.delta}")
        if np.any(self.lam[1:].sum(axis=1) > self.Lambda * (1.0 + 1.0e-12)):
            raise ParameterDomainError("Lambda", "a lambda row sum exceeds Lambda")

    ###########################################################################

    @property
    def alpha(self) -> float:
        return self.tables.alpha

    ###########################################################################

    @property
    def c_delta(self) -> float:
        """C_delta = delta / (delta - 1)"""

        return self.delta / (self.delta - 1.0)

    ###########################################################################

    def hypothesis_gap(self, n: int) -> float:
        """
        Right-hand side minus left-hand side of the hypothesis at step n
        (non-negative when the hypothesis holds, zero at equality).

        :param n: Step index, 1..N.
        :type n: `int`

        :return: Gap.
        :rtype: `float`
        """

        nu = self.tables.mesh.nu
        squares = self.v**2
        lhs = float(np.dot(self.tables.K[n, 1 : n + 1], np.diff(squares[: n + 1])))
        offset = nu * self.v[n - 1] + (1.0 - nu) * self.v[n]
        rhs = (
            float(np.dot(self.lam[n, : n + 1], squares[: n + 1]))
            + offset * self.xi[n]
            + self.eta[n] ** 2
            + self.zeta[n] ** 2
        )

        return rhs - lhs

    ###########################################################################

    @staticmethod
    def generate(
        seed: int,
        tables: KernelTables,
        delta: float = 2.0,
        Lambda: float = 1.0,
    ) -> "GronwallInstance":
        """
        Draw random non-negative data respecting Lambda and the time-step
        condition, then solve the hypothesis at equality for v^1..v^N.

        :param seed: Seed of the random generator.
        :type seed: `int`

        :param tables: Kernel tables of the mesh.
        :type tables: `KernelTables`

        :param delta: Constant delta > 1.
        :type delta: `float`

        :param Lambda: Bound on the lambda row sums.
        :type Lambda: `float`

        :return: Instance satisfying the hypothesis with equality.
        :rtype: `GronwallInstance`
        """

        if not (delta > 1):
            raise ParameterDomainError("delta", f"must exceed 1, got {delta}")
        if not (Lambda > 0):
            raise ParameterDomainError("Lambda", f"must be positive, got {Lambda}")

        rng = np.random.default_rng(seed)
        mesh, alpha = tables.mesh, tables.alpha
        N, nu, K = mesh.N, mesh.nu, tables.K

        # Largest lambda^n_n for which the maximum step meets the condition

        cap = 1.0 / (
            delta
            * AlikhanovKernels.PI_A
            * gamma_fn(2.0 - alpha)
            * mesh.max_step**alpha
        )

        lam = np.zeros((N + 1, N + 1))

        for n in range(1, N + 1):
            lam[n, : n + 1] = rng.uniform(0.0, Lambda / (n + 1), size=n + 1)
            lam[n, n] = min(lam[n, n], cap)

        xi = np.concatenate(([0.0], rng.uniform(0.0, 1.0, size=N)))
        eta = np.concatenate(([0.0], rng.uniform(0.0, 0.5, size=N)))
        zeta = np.concatenate(([0.0], rng.uniform(0.0, 0.5, size=N)))

        v = np.zeros(N + 1)
        v[0] = rng.uniform(0.5, 1.5)
        squares = np.zeros(N + 1)
        squares[0] = v[0] ** 2

        for n in range(1, N + 1):
            known = float(np.dot(K[n, 1:n], np.diff(squares[:n]))) if n > 1 else 0.0

            # (K_nn - lambda_nn) x^2 - (1 - nu) xi x - c = 0, c >= 0 by
            # monotonicity of the kernels

            quad = K[n, n] - lam[n, n]
            lin = (1.0 - nu) * xi[n]
            c = (
                K[n, n] * squares[n - 1]
                - known
                + float(np.dot(lam[n, :n], squares[:n]))
                + nu * v[n - 1] * xi[n]
                + eta[n] ** 2
                + zeta[n] ** 2
            )
            c = max(c, 0.0)

            v[n] = (lin + math.sqrt(lin * lin + 4.0 * quad * c)) / (2.0 * quad)
            squares[n] = v[n] ** 2

        return GronwallInstance(
            tables=tables,
            v=v,
            xi=xi,
            eta=eta,
            zeta=zeta,
            lam=lam,
            Lambda=Lambda,
            delta=delta,
        )


###############################################################################
