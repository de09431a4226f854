###############################################################################
# tfac (C) tfac contributors 2026
#
# Observed decay orders of a quantity measured on a family of meshes with an
# increasing number of steps N
###############################################################################

from __future__ import annotations

from dataclasses import dataclass, field
import math

###############################################################################
# Implementation
###############################################################################


@dataclass(frozen=True)
class RateReport:
    quantity: str
    """What was measured"""

    N: tuple[int, ...]
    """Numbers of steps, increasing"""

    values: tuple[float, ...]
    """Measured quantity per N"""

    expected: float | None = None
    """Predicted order, when the analysis gives one"""

    extras: dict[str, tuple] = field(default_factory=dict)
    """Secondary measurements per N"""

    ###########################################################################

    @property
    def orders(self) -> tuple[float | None, ...]:
        """log(v1 / v2) / log(N2 / N1) for consecutive entries"""

        return tuple(
            RateReport.order(v1, v2, n1, n2)
            for v1, v2, n1, n2 in zip(
                self.values, self.values[1:], self.N, self.N[1:]
            )
        )

    ###########################################################################

    @property
    def final_order(self) -> float | None:
        orders = self.orders
        return orders[-1] if orders else None

    ###########################################################################

    @staticmethod
    def order(v1: float, v2: float, n1: int, n2: int) -> float | None:
        if not (v1 > 0 and v2 > 0 and math.isfinite(v1) and math.isfinite(v2)):
            return None
        if n1 == n2:
            return None

        return math.log(v1 / v2) / math.log(n2 / n1)


###############################################################################
