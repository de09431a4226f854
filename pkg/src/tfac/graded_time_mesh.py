###############################################################################
# tfac (C) tfac contributors 2026
#
# Graded temporal mesh t_n = (n/N)^gamma * T with its steps, step ratios and
# offset (fractional) time levels t_{n-nu} = nu * t_{n-1} + (1 - nu) * t_n.
# Also evaluates the maximum time-step restriction of the discrete fractional
# Gronwall inequality
###############################################################################

from dataclasses import dataclass
import logging
from typing import ClassVar

import numpy as np
from scipy.special import gamma as gamma_fn

from tfac.alikhanov_kernels import AlikhanovKernels
from tfac.errors import ParameterDomainError

logger = logging.getLogger(__name__)

###############################################################################


@dataclass(frozen=True)
class StepRestriction:
    """Outcome of comparing the largest step against the admissible bound."""

    dt_star: float
    """Largest admissible time step"""

    satisfied: bool
    """True when the largest mesh step does not exceed `dt_star`"""

    max_step: float
    """Largest step of the mesh under test"""

    L: float
    """Lipschitz-type constant the bound was computed for"""

    delta: float
    """Constant delta > 1 of the Gronwall inequality"""


###############################################################################
# Implementation
###############################################################################


class GradedTimeMesh:
    STEP_TOLERANCE: ClassVar[float] = 1.0e-14
    """Relative slack (in units of T) allowed when asserting monotone steps"""

    ###########################################################################

    def __init__(self, T: float, N: int, gamma: float = 1.0, nu: float = 0.0):
        """
        Constructor: validates the parameters and computes the nodes from the
        closed formula, the steps by differencing.

        :param T: Final time.
        :type T: `float`

        :param N: Number of steps.
        :type N: `int`

        :param gamma: Grading exponent, at least 1 (1 means uniform).
        :type gamma: `float`

        :param nu: Offset of the fractional time level, in [0, 1/2).
        :type nu: `float`
        """

        if not (T > 0):
            raise ParameterDomainError("T", f"must be positive, got {T}")
        if int(N) != N or N < 1:
            raise ParameterDomainError("N", f"must be a positive integer, got {N}")
        if not (gamma >= 1):
            raise ParameterDomainError("gamma", f"must be at least 1, got {gamma}")
        if not (0 <= nu < 0.5):
            raise ParameterDomainError("nu", f"must lie in [0, 1/2), got {nu}")

        self.T: float = float(T)
        self.N: int = int(N)
        self.gamma: float = float(gamma)
        self.nu: float = float(nu)

        nodes = T * (np.arange(self.N + 1, dtype=float) / self.N) ** self.gamma
        nodes[-1] = self.T

        steps = np.diff(nodes)
        ratios = steps[1:] / steps[:-1]
        offsets = self.nu * nodes[:-1] + (1.0 - self.nu) * nodes[1:]

        for array in (nodes, steps, ratios, offsets):
            array.setflags(write=False)

        self.nodes: np.ndarray = nodes
        """t_0..t_N"""

        self.steps: np.ndarray = steps
        """steps[n - 1] is the step t_n - t_{n-1}"""

        self.ratios: np.ndarray = ratios
        """ratios[j - 2] is mu_j = dt_j / dt_{j-1}, j = 2..N"""

        self.offset_levels: np.ndarray = offsets
        """offset_levels[n - 1] is t_{n-nu}"""

    ###########################################################################

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedTimeMesh):
            return False

        return (self.T, self.N, self.gamma, self.nu) == (
            other.T,
            other.N,
            other.gamma,
            other.nu,
        )

    ###########################################################################

    def __hash__(self) -> int:
        return hash((self.T, self.N, self.gamma, self.nu))

    ###########################################################################

    def __repr__(self) -> str:
        return (
            f"GradedTimeMesh(T={self.T}, N={self.N}, "
            f"gamma={self.gamma}, nu={self.nu})"
        )

    ###########################################################################

    @property
    def max_step(self) -> float:
        """Largest step, attained at n = N for gamma >= 1"""

        return float(self.steps.max())

    ###########################################################################

    @property
    def max_ratio(self) -> float:
        """Largest ratio of consecutive steps (1 when N = 1)"""

        return float(self.ratios.max()) if self.ratios.size else 1.0

    ###########################################################################

    @staticmethod
    def build_graded_mesh(
        T: float, N: int, gamma: float = 1.0, nu: float = 0.0
    ) -> "GradedTimeMesh":
        """
        Build a graded mesh; see the constructor for the parameters.

        :return: New mesh.
        :rtype: `GradedTimeMesh`
        """

        mesh = GradedTimeMesh(T, N, gamma, nu)
        logger.debug("Built %r with max step %.3e", mesh, mesh.max_step)

        return mesh

    ###########################################################################

    def step(self, n: int) -> float:
        """
        :param n: Step index, 1..N.
        :type n: `int`

        :return: dt_n = t_n - t_{n-1}.
        :rtype: `float`
        """

        self.__check_index(n)

        return float(self.steps[n - 1])

    ###########################################################################

    def offset_level(self, n: int) -> float:
        """
        Fractional time level t_{n-nu} = nu * t_{n-1} + (1 - nu) * t_n.

        :param n: Step index, 1..N.
        :type n: `int`

        :return: Offset level inside (t_{n-1}, t_n].
        :rtype: `float`
        """

        self.__check_index(n)

        return float(self.offset_levels[n - 1])

    ###########################################################################

    def step_restriction(
        self,
        alpha: float,
        L: float,
        delta: float = 2.0,
        offset_factor: bool = False,
    ) -> StepRestriction:
        """
        Evaluate dt* = (delta * pi_A * L * Gamma(2 - alpha))^(-1/alpha) and
        compare it against the largest step of this mesh.

        :param alpha: Fractional order in (0, 1).
        :type alpha: `float`

        :param L: Positive constant (the largest lambda^n_n in the Gronwall
            inequality, or L* = 6 + 27 * max|u|^4 for the solver).
        :type L: `float`

        :param delta: Constant greater than 1.
        :type delta: `float`

        :param offset_factor: Include the (1 - nu)^2 factor used by the error
            analysis.
        :type offset_factor: `bool`

        :return: Bound and verdict.
        :rtype: `StepRestriction`
        """

        if not (0 < alpha < 1):
            raise ParameterDomainError("alpha", f"must lie in (0, 1), got {alpha}")
        if not (L > 0):
            raise ParameterDomainError("L", f"must be positive, got {L}")
        if not (delta > 1):
            raise ParameterDomainError("delta", f"must exceed 1, got {delta}")

        base = delta * AlikhanovKernels.PI_A * L * gamma_fn(2.0 - alpha)

        if offset_factor:
            base *= (1.0 - self.nu) ** 2

        with np.errstate(over="ignore"):
            dt_star = float(np.power(base, -1.0 / alpha))

        max_step = self.max_step

        return StepRestriction(
            dt_star=dt_star,
            satisfied=max_step <= dt_star,
            max_step=max_step,
            L=float(L),
            delta=float(delta),
        )

    ###########################################################################

    def __check_index(self, n: int):
        if not (1 <= n <= self.N):
            raise IndexError(f"Step index {n} is outside 1..{self.N}")


###############################################################################
