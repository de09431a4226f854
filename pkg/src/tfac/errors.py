###############################################################################
# tfac (C) tfac contributors 2026
#
# Exceptions raised by the library. The command-line front-end converts them
# into messages on standard error and exit statuses
###############################################################################


class ParameterDomainError(ValueError):
    """A parameter lies outside its documented domain."""

    def __init__(self, key: str, message: str):
        """
        :param key: Name of the offending parameter.
        :type key: `str`

        :param message: Human-readable description of the domain rule.
        :type message: `str`
        """

        super().__init__(f"{key}: {message}")
        self.key = key


###############################################################################


class KernelInvariantError(ArithmeticError):
    """Kernel positivity or monotonicity failed at a table entry."""

    def __init__(self, n: int, j: int, message: str):
        super().__init__(f"K[{n},{j}]: {message}")
        self.n = n
        self.j = j


###############################################################################


class SolverError(RuntimeError):
    """A time step could not be completed."""

    def __init__(self, step: int, message: str):
        super().__init__(f"step {step}: {message}")
        self.step = step


###############################################################################
