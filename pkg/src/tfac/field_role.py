###############################################################################
# tfac (C) tfac contributors 2026
#
# Enumeration telling which half of the mixed pair a discrete field belongs to
###############################################################################

from enum import IntEnum

###############################################################################


class FieldRole(IntEnum):
    SCALAR = 0
    """Discontinuous piecewise polynomial u_h."""

    FLUX = 1
    """Raviart-Thomas vector field sigma_h."""


###############################################################################
