#!/usr/bin/env python3

###############################################################################
# tfac (C) tfac contributors 2026
#
# Command-line entry point: parses the configuration, sets up logging and
# hands over to the runner
###############################################################################

import logging
import sys
from typing import Sequence

from tfac.errors import ParameterDomainError
from tfac.run_config import RunConfig
from tfac.runner import Runner

###############################################################################

LOG_FORMAT = "[%(levelname)s] %(name)s: %(message)s"
LOG_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)

###############################################################################


def main(argv: Sequence[str] | None = None) -> int:
    """
    Execution entry point

    :param argv: Arguments without the program name (sys.argv[1:] when
        omitted).
    :type argv: `Sequence[str]` | `None`

    :return: 0 on success, 1 on failed runs or checks, 2 on configuration
        errors.
    :rtype: `int`
    """

    try:
        config = RunConfig.parse_config(sys.argv[1:] if argv is None else argv)
    except ParameterDomainError as ex:
        print(f"tfac: invalid configuration: {ex}", file=sys.stderr)
        return Runner.EXIT_CONFIG
    except OSError as ex:
        print(f"tfac: cannot read configuration: {ex}", file=sys.stderr)
        return Runner.EXIT_CONFIG

    logging.basicConfig(
        format=LOG_FORMAT,
        level=LOG_LEVELS[min(config.verbose, len(LOG_LEVELS) - 1)],
        stream=sys.stderr,
    )

    try:
        return Runner.execute(config)
    except ParameterDomainError as ex:
        print(f"tfac: invalid configuration: {ex}", file=sys.stderr)
        return Runner.EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())


###############################################################################
