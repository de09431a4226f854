###############################################################################
# tfac (C) tfac contributors 2026
#
# Enumeration containing flags to control the behaviour of TfacSolver
###############################################################################

from enum import IntFlag

###############################################################################


class SolverFlags(IntFlag):
    NONE = 0
    """Linear reaction f(u) = u, kappa^2 dropped from the discrete divergence
    term, no flux history."""

    NONLINEAR = 1 << 0
    """Full Allen-Cahn reaction f(u) = u - u^3 with Newton linearization."""

    KAPPA_IN_SCHEME = 1 << 1
    """Multiply (div sigma^{n-nu}, v) by kappa^2 as in the continuous problem."""

    KEEP_FLUX_HISTORY = 1 << 2
    """Store sigma^0..sigma^n, not only the latest flux."""

    DEFAULT = NONLINEAR | KAPPA_IN_SCHEME
    """Default flags."""


###############################################################################
