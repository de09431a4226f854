###############################################################################
# tfac (C) tfac contributors 2026
#
# Bound of the discrete fractional Gronwall inequality and its verification
# on generated instances
###############################################################################

from dataclasses import dataclass
import logging
import math
from typing import ClassVar

import numpy as np

from tfac.alikhanov_kernels import AlikhanovKernels
from tfac.gronwall_instance import GronwallInstance
from tfac.graded_time_mesh import GradedTimeMesh, StepRestriction
from tfac.mittag_leffler import MittagLeffler

logger = logging.getLogger(__name__)

###############################################################################


@dataclass(frozen=True)
class GronwallReport:
    """Verdict of one verification run"""

    seed: int
    alpha: float
    gamma: float
    N: int

    holds: bool
    """True when the bound dominates v^n at every n"""

    min_slack: float
    """Minimum over n of bound_n - v^n"""

    slacks: tuple[float, ...]
    """bound_n - v^n for n = 1..N"""

    step_condition_met: bool
    """False when the bound is computed but does not certify anything"""

    c_delta: float
    """delta / (delta - 1)"""


###############################################################################
# Implementation
###############################################################################


class Gronwall:
    SLACK_TOLERANCE: ClassVar[float] = 1.0e-10
    """Absolute slack tolerated when declaring that the bound holds"""

    ###########################################################################

    @staticmethod
    def step_condition(instance: GronwallInstance) -> StepRestriction:
        """
        Evaluate the time-step condition with L = max_n lambda^n_n.

        :param instance: Instance to inspect.
        :type instance: `GronwallInstance`

        :return: Restriction record (always satisfied when every lambda^n_n
            vanishes).
        :rtype: `StepRestriction`
        """

        mesh = instance.tables.mesh
        diagonal = np.diagonal(instance.lam)[1:]
        L = float(diagonal.max()) if diagonal.size else 0.0

        if L <= 0:
            return StepRestriction(
                dt_star=math.inf,
                satisfied=True,
                max_step=mesh.max_step,
                L=0.0,
                delta=instance.delta,
            )

        return mesh.step_restriction(instance.alpha, L, instance.delta)

    ###########################################################################

    @staticmethod
    def gronwall_bound(instance: GronwallInstance, n: int) -> float:
        """
        Right-hand side of the Gronwall conclusion at step n:
        C_delta E_alpha(C_delta pi_A Lambda t_n^alpha) (v^0
            + max_j sum_i P[j,i] xi^i
            + (2 pi_A t_n^alpha)^(1/2) max_j eta^j
            + max_j (sum_i P[j,i] (zeta^i)^2)^(1/2)).

        :param instance: Instance providing the data.
        :type instance: `GronwallInstance`

        :param n: Step index, 1..N.
        :type n: `int`

        :return: Bound on v^n.
        :rtype: `float`
        """

        tables = instance.tables
        mesh = tables.mesh

        if not (1 <= n <= mesh.N):
            raise IndexError(f"Step index {n} is outside 1..{mesh.N}")

        if not Gronwall.step_condition(instance).satisfied:
            logger.debug("Time-step condition unmet at n = %d", n)

        P = tables.P[1 : n + 1, 1 : n + 1]
        t_alpha = mesh.nodes[n] ** instance.alpha
        c_delta = instance.c_delta
        pi_a = AlikhanovKernels.PI_A

        forcing = (
            instance.v[0]
            + float(np.max(P @ instance.xi[1 : n + 1]))
            + math.sqrt(2.0 * pi_a * t_alpha) * float(instance.eta[1 : n + 1].max())
            + math.sqrt(float(np.max(P @ instance.zeta[1 : n + 1] ** 2)))
        )

        growth = MittagLeffler.evaluate(
            instance.alpha, c_delta * pi_a * instance.Lambda * t_alpha
        )

        return c_delta * growth * forcing

    ###########################################################################

    @staticmethod
    def verify_gronwall(
        seed: int,
        alpha: float,
        mesh: GradedTimeMesh,
        delta: float = 2.0,
        Lambda: float = 1.0,
    ) -> GronwallReport:
        """
        Generate a random instance at equality and check that the bound
        dominates v^n at every step.

        :param seed: Seed of the random generator.
        :type seed: `int`

        :param alpha: Fractional order in (0, 1).
        :type alpha: `float`

        :param mesh: Temporal mesh.
        :type mesh: `GradedTimeMesh`

        :param delta: Constant delta > 1.
        :type delta: `float`

        :param Lambda: Bound on the lambda row sums.
        :type Lambda: `float`

        :return: Report (never raises for a numerical outcome).
        :rtype: `GronwallReport`
        """

        tables = AlikhanovKernels.build_kernel_tables(mesh, alpha)
        instance = GronwallInstance.generate(seed, tables, delta, Lambda)

        return Gronwall.verify_instance(instance, seed)

    ###########################################################################

    @staticmethod
    def verify_instance(instance: GronwallInstance, seed: int = -1) -> GronwallReport:
        """
        Compare v^n against the bound at every step of a given instance.

        :param instance: Instance to check.
        :type instance: `GronwallInstance`

        :param seed: Seed recorded in the report.
        :type seed: `int`

        :return: Report.
        :rtype: `GronwallReport`
        """

        mesh = instance.tables.mesh
        slacks = tuple(
            Gronwall.gronwall_bound(instance, n) - float(instance.v[n])
            for n in range(1, mesh.N + 1)
        )
        min_slack = min(slacks)

        report = GronwallReport(
            seed=seed,
            alpha=instance.alpha,
            gamma=mesh.gamma,
            N=mesh.N,
            holds=min_slack >= -Gronwall.SLACK_TOLERANCE,
            min_slack=min_slack,
            slacks=slacks,
            step_condition_met=Gronwall.step_condition(instance).satisfied,
            c_delta=instance.c_delta,
        )

        if not report.step_condition_met:
            logger.warning("Seed %d: time-step condition unmet", seed)

        logger.debug("Gronwall seed %d: min slack %.3e", seed, min_slack)

        return report


###############################################################################
