###############################################################################
# tfac (C) tfac contributors 2026
#
# Enumeration of the rules tying the spatial mesh size to the number of
# time steps in a convergence study
###############################################################################

from enum import Enum

###############################################################################


class CouplingRule(Enum):
    HALF_INVERSE = "half-inverse"
    """2N cells per axis: spatial and temporal errors are refined together."""

    FIXED = "fixed"
    """Cells of width close to h for every N (only temporal rates are
    meaningful)."""

    DEFAULT = HALF_INVERSE
    """Default value."""

    ###########################################################################

    def cells(self, N: int, h: float | None = None, width: float = 1.0) -> int:
        """
        :param N: Number of time steps.
        :type N: `int`

        :param h: Nominal cell width for the fixed rule.
        :type h: `float` | `None`

        :param width: Extent of the domain along the axis.
        :type width: `float`

        :return: Cells along the axis.
        :rtype: `int`
        """

        if self is CouplingRule.HALF_INVERSE:
            return 2 * N

        if h is None or not (h > 0):
            raise ValueError(f"The fixed coupling needs a positive h, got {h}")

        return max(1, round(width / h))


###############################################################################
