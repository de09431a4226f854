###############################################################################
# tfac (C) tfac contributors 2026
#
# Enumeration of the command-line sub-commands
###############################################################################

from enum import Enum

###############################################################################


class RunCommand(Enum):
    SOLVE = "solve"
    """One run of a manufactured case with per-step diagnostics."""

    STUDY = "study"
    """Refinement study with convergence rates."""

    KERNELS = "kernels"
    """Kernel property checks, optionally with the raw tables."""

    GRONWALL = "gronwall"
    """Random certification of the discrete Gronwall bound."""

    MESH_INFO = "mesh-info"
    """Element, edge and degree-of-freedom counts of a spatial mesh."""


###############################################################################
