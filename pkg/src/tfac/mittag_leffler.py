###############################################################################
# tfac (C) tfac contributors 2026
#
# Mittag-Leffler function E_{alpha,beta}(z) = sum_k z^k / Gamma(alpha*k + beta)
# for non-negative arguments. All terms are positive, so the series is summed
# directly with every term evaluated in log space
###############################################################################

import math
from typing import ClassVar

import numpy as np
from scipy.special import gammaln

from tfac.errors import ParameterDomainError

###############################################################################
# Implementation
###############################################################################


class MittagLeffler:
    CHUNK: ClassVar[int] = 64
    """Number of series terms evaluated per vectorised pass"""

    MAX_LOG_TERM: ClassVar[float] = math.log(np.finfo(float).max)
    """Largest log of a representable term"""

    MAX_TERMS: ClassVar[int] = 1 << 16
    """Upper limit on the number of terms before giving up"""

    TOLERANCE: ClassVar[float] = 1.0e-17
    """Relative size of the first neglected term"""

    ###########################################################################

    @staticmethod
    def evaluate(alpha: float, z: float, beta: float = 1.0) -> float:
        """
        Evaluate the two-parameter Mittag-Leffler function for z >= 0.

        :param alpha: Order in (0, 1].
        :type alpha: `float`

        :param z: Non-negative argument.
        :type z: `float`

        :param beta: Second parameter, positive (1 gives E_alpha).
        :type beta: `float`

        :return: Series value.
        :rtype: `float`

        :raises ParameterDomainError: for z < 0 or alpha outside (0, 1].
        :raises OverflowError: when the value is not representable.
        """

        if not (0 < alpha <= 1):
            raise ParameterDomainError("alpha", f"must lie in (0, 1], got {alpha}")
        if not (beta > 0):
            raise ParameterDomainError("beta", f"must be positive, got {beta}")
        if not (z >= 0):
            raise ParameterDomainError("z", f"must be non-negative, got {z}")

        if z == 0:
            return float(math.exp(-gammaln(beta)))

        log_z = math.log(z)
        total = 0.0
        start = 0

        while start < MittagLeffler.MAX_TERMS:
            k = np.arange(start, start + MittagLeffler.CHUNK, dtype=float)
            log_terms = k * log_z - gammaln(alpha * k + beta)

            if log_terms.max() > MittagLeffler.MAX_LOG_TERM:
                raise OverflowError(
                    f"E_{alpha}({z}) exceeds the floating-point range"
                )

            terms = np.exp(log_terms)
            total += float(terms.sum())

            # Terms decrease monotonically once past the peak

            if (log_terms[-1] < log_terms[-2]) and (
                terms[-1] <= MittagLeffler.TOLERANCE * total
            ):
                if math.isinf(total):
                    raise OverflowError(
                        f"E_{alpha}({z}) exceeds the floating-point range"
                    )
                return total

            start += MittagLeffler.CHUNK

        raise OverflowError(f"E_{alpha}({z}) did not converge")


###############################################################################
