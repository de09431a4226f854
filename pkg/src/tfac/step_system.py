###############################################################################
# tfac (C) tfac contributors 2026
#
# Linear saddle-point system of one time step, unknowns (sigma^n, u^n)
###############################################################################

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sps

###############################################################################


@dataclass(frozen=True, eq=False)
class StepSystem:
    n: int
    """Step index"""

    matrix: sps.csc_array
    """Block matrix [[A_ss, A_su], [A_us, A_uu]] of size n_sigma + n_u"""

    rhs: np.ndarray
    """Right-hand side"""

    n_sigma: int
    """Number of flux unknowns (the leading block)"""


###############################################################################
