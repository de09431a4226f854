###############################################################################
# tfac (C) tfac contributors 2026
#
# Coefficient vector of a scalar or flux field in a mixed space
###############################################################################

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from tfac.field_role import FieldRole

if TYPE_CHECKING:
    from tfac.mixed_space import MixedSpace

###############################################################################
# Implementation
###############################################################################


@dataclass(frozen=True, eq=False)
class DiscreteField:
    space: MixedSpace
    """Space the coefficients refer to"""

    role: FieldRole
    """Scalar or flux"""

    coefficients: np.ndarray
    """Read-only coefficient vector"""

    ###########################################################################

    def __post_init__(self):
        values = np.array(self.coefficients, dtype=float)
        expected = self.space.dof_count(self.role)

        if values.shape != (expected,):
            raise ValueError(
                f"{self.role.name} field needs {expected} coefficients, "
                f"got shape {values.shape}"
            )

        values.setflags(write=False)
        object.__setattr__(self, "coefficients", values)

    ###########################################################################

    @staticmethod
    def zeros(space: MixedSpace, role: FieldRole) -> DiscreteField:
        return DiscreteField(space, role, np.zeros(space.dof_count(role)))

    ###########################################################################

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.coefficients)))


###############################################################################
