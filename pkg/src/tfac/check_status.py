###############################################################################
# tfac (C) tfac contributors 2026
#
# Enumeration describing the outcome of an executable property check
###############################################################################

from enum import IntEnum

###############################################################################


class CheckStatus(IntEnum):
    PASSED = 0
    """The property holds on every entry examined."""

    FAILED = 1
    """The property is violated on at least one entry."""

    VACUOUS = 2
    """The quantifier range is empty (e.g. n >= 2 on a single-step mesh)."""

    HYPOTHESIS_UNMET = 3
    """A precondition of the property does not hold, nothing was certified."""

    ###########################################################################

    @property
    def is_failure(self) -> bool:
        """Only FAILED counts as a failure; the other outcomes certify nothing
        wrong"""

        return self == CheckStatus.FAILED


###############################################################################
