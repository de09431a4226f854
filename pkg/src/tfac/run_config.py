###############################################################################
# tfac (C) tfac contributors 2026
#
# Resolved configuration of one command-line run: defaults, then values from
# a key = value file, then command-line flags
###############################################################################

from __future__ import annotations

import argparse
from dataclasses import dataclass, field, fields
import logging
from pathlib import Path
from typing import Any, Callable, ClassVar, Sequence

from tfac.config_file import ConfigFile
from tfac.coupling_rule import CouplingRule
from tfac.errors import ParameterDomainError
from tfac.manufactured_case import ManufacturedCase
from tfac.run_command import RunCommand

logger = logging.getLogger(__name__)

###############################################################################
# Implementation
###############################################################################


@dataclass(frozen=True)
class RunConfig:
    command: RunCommand
    example: str | None = None
    alpha: float | None = None
    gamma: float | None = None
    nu: float | None = None
    kappa: float = 1.0
    T: float = 1.0
    N: tuple[int, ...] = (32,)
    nx: int | None = None
    ny: int | None = None
    coupling: CouplingRule = CouplingRule.DEFAULT
    h: float | None = None
    order: int = 1
    delta: float = 2.0
    output: Path = Path(".")
    seed: int = 0
    seeds: int = 100
    workers: int = 0
    dump_tables: bool = False
    snapshots: tuple[int, ...] = ()
    tolerance: float = 1.0e-8
    verbose: int = field(default=0, compare=False)
    """Logging verbosity, not part of the configuration file"""

    DEFAULT_STUDY_N: ClassVar[tuple[int, ...]] = (8, 16, 32, 64)
    """Refinement family of a study when N is not given"""

    OPTIONS: ClassVar[dict[RunCommand, tuple[str, ...]]] = {
        RunCommand.SOLVE: (
            "example",
            "alpha",
            "gamma",
            "nu",
            "kappa",
            "T",
            "N",
            "nx",
            "ny",
            "coupling",
            "h",
            "order",
            "delta",
            "snapshots",
            "tolerance",
        ),
        RunCommand.STUDY: (
            "example",
            "alpha",
            "gamma",
            "nu",
            "kappa",
            "T",
            "N",
            "coupling",
            "h",
            "order",
            "workers",
        ),
        RunCommand.KERNELS: ("alpha", "gamma", "nu", "T", "N", "dump_tables"),
        RunCommand.GRONWALL: (
            "alpha",
            "gamma",
            "nu",
            "T",
            "N",
            "delta",
            "seed",
            "seeds",
        ),
        RunCommand.MESH_INFO: (
            "example",
            "N",
            "nx",
            "ny",
            "coupling",
            "h",
            "order",
            "dump_tables",
        ),
    }
    """Flags accepted by every sub-command besides --config, --output and -v"""

    ###########################################################################

    @staticmethod
    def keys() -> tuple[str, ...]:
        """Keys of the configuration file"""

        return tuple(f.name for f in fields(RunConfig) if f.compare)

    ###########################################################################

    @staticmethod
    def build_parser() -> argparse.ArgumentParser:
        """
        :return: Parser with one sub-parser per `RunCommand`; absent flags do
            not appear in the namespace.
        :rtype: `argparse.ArgumentParser`
        """

        common = argparse.ArgumentParser(add_help=False)
        common.add_argument(
            "--config", default=argparse.SUPPRESS, help="key = value file"
        )
        common.add_argument(
            "--output", default=argparse.SUPPRESS, help="directory for artefacts"
        )
        common.add_argument(
            "-v",
            "--verbose",
            action="count",
            default=argparse.SUPPRESS,
            help="INFO logging, twice for DEBUG",
        )

        parser = argparse.ArgumentParser(
            prog="tfac",
            parents=[common],
            description="Time-fractional Allen-Cahn solver and verification",
        )
        commands = parser.add_subparsers(dest="command", metavar="command")

        for command, options in RunConfig.OPTIONS.items():
            sub = commands.add_parser(command.value, parents=[common])

            for key in options:
                flag = "--" + key.replace("_", "-")

                if key == "dump_tables":
                    sub.add_argument(
                        flag, action="store_true", default=argparse.SUPPRESS
                    )
                else:
                    sub.add_argument(flag, dest=key, default=argparse.SUPPRESS)

        return parser

    ###########################################################################

    @staticmethod
    def parse_config(
        argv: Sequence[str] | None, config_file: Path | None = None
    ) -> RunConfig:
        """
        Build a configuration from command-line arguments and an optional
        file. Flags override file values, file values override defaults.

        :param argv: Arguments without the program name.
        :type argv: `Sequence[str]` | `None`

        :param config_file: File read when --config is not given.
        :type config_file: `Path` | `None`

        :return: Validated configuration with all defaults resolved.
        :rtype: `RunConfig`

        :raises ParameterDomainError: on an unknown key, a malformed value or
            a value outside its domain.
        """

        args = vars(RunConfig.build_parser().parse_args(argv))
        verbose = int(args.pop("verbose", 0))
        path = args.pop("config", None) or config_file

        raw: dict[str, Any] = {}

        if path is not None:
            raw.update(ConfigFile.load(Path(path), RunConfig.keys()))

        raw.update({key: value for key, value in args.items() if value is not None})

        values = {
            key: RunConfig.__convert(key, value) for key, value in raw.items()
        }

        if "command" not in values:
            raise ParameterDomainError(
                "command",
                "missing, expected one of: "
                + ", ".join(command.value for command in RunCommand),
            )

        config = RunConfig.__resolve(values, verbose)
        logger.debug("Resolved %r", config)

        return config

    ###########################################################################

    def to_text(self) -> str:
        """
        :return: The configuration as a file that parses back to an equal
            `RunConfig`.
        :rtype: `str`
        """

        pairs: dict[str, object] = {}

        for key in RunConfig.keys():
            value = getattr(self, key)

            if isinstance(value, (RunCommand, CouplingRule)):
                value = value.value
            elif isinstance(value, bool):
                value = "true" if value else "false"
            elif isinstance(value, tuple):
                value = ",".join(str(item) for item in value) or None
            elif isinstance(value, float):
                value = repr(value)

            pairs[key] = value

        return ConfigFile.to_str(pairs)

    ###########################################################################

    @staticmethod
    def __convert(key: str, value: Any) -> Any:
        converters: dict[str, Callable[[str], Any]] = {
            "command": RunCommand,
            "example": str,
            "alpha": float,
            "gamma": float,
            "nu": float,
            "kappa": float,
            "T": float,
            "N": RunConfig.__int_list,
            "nx": int,
            "ny": int,
            "coupling": CouplingRule,
            "h": float,
            "order": int,
            "delta": float,
            "output": Path,
            "seed": int,
            "seeds": int,
            "workers": int,
            "dump_tables": RunConfig.__bool,
            "snapshots": RunConfig.__int_list,
            "tolerance": float,
        }

        if isinstance(value, bool) and key == "dump_tables":
            return value

        try:
            return converters[key](str(value).strip())
        except (TypeError, ValueError) as ex:
            raise ParameterDomainError(key, f"cannot parse {value!r}") from ex

    ###########################################################################

    @staticmethod
    def __int_list(text: str) -> tuple[int, ...]:
        return tuple(int(item) for item in text.split(",") if item.strip())

    ###########################################################################

    @staticmethod
    def __bool(text: str) -> bool:
        lowered = text.lower()

        if lowered in ("1", "true", "yes", "on"):
            return True
        if lowered in ("0", "false", "no", "off"):
            return False

        raise ValueError(text)

    ###########################################################################

    @staticmethod
    def __resolve(values: dict[str, Any], verbose: int) -> RunConfig:
        command: RunCommand = values["command"]

        # Case-dependent defaults

        example = values.get("example")

        if example is not None:
            case = ManufacturedCase.get_case(example)
            values.setdefault("kappa", case.kappa)
            values.setdefault("T", case.T)
        elif command in (RunCommand.SOLVE, RunCommand.STUDY):
            raise ParameterDomainError(
                "example",
                f"required by {command.value}, available: "
                + ", ".join(ManufacturedCase.CASES),
            )

        if command == RunCommand.STUDY:
            values.setdefault("N", RunConfig.DEFAULT_STUDY_N)

        # Order-dependent defaults

        alpha = values.get("alpha")

        if alpha is None:
            if command not in (RunCommand.MESH_INFO,):
                raise ParameterDomainError("alpha", f"required by {command.value}")
        else:
            if not (0 < alpha < 1):
                raise ParameterDomainError("alpha", f"must lie in (0, 1), got {alpha}")
            values.setdefault("gamma", 2.0 / alpha + 0.1)
            values.setdefault("nu", alpha / 2.0)

        if values.get("nx") is not None:
            values.setdefault("ny", values["nx"])
        if values.get("ny") is not None:
            values.setdefault("nx", values["ny"])

        config = RunConfig(**values, verbose=verbose)
        config.__check()

        return config

    ###########################################################################

    def __check(self):
        if self.gamma is not None and not (self.gamma >= 1):
            raise ParameterDomainError("gamma", f"must be >= 1, got {self.gamma}")
        if self.nu is not None and not (0 <= self.nu < 0.5):
            raise ParameterDomainError("nu", f"must lie in [0, 1/2), got {self.nu}")
        if not (0 < self.kappa <= 1):
            raise ParameterDomainError("kappa", f"must lie in (0, 1], got {self.kappa}")
        if not (self.T > 0):
            raise ParameterDomainError("T", f"must be positive, got {self.T}")
        if not self.N or min(self.N) < 1:
            raise ParameterDomainError("N", f"must be positive integers, got {self.N}")
        if any(b <= a for a, b in zip(self.N, self.N[1:])):
            raise ParameterDomainError("N", f"must be increasing, got {self.N}")
        if self.command == RunCommand.SOLVE and len(self.N) != 1:
            raise ParameterDomainError("N", "solve takes a single value")
        if self.order not in (0, 1):
            raise ParameterDomainError("order", f"must be 0 or 1, got {self.order}")
        if not (self.delta > 1):
            raise ParameterDomainError("delta", f"must exceed 1, got {self.delta}")
        if self.h is not None and not (self.h > 0):
            raise ParameterDomainError("h", f"must be positive, got {self.h}")
        if self.seeds < 1:
            raise ParameterDomainError("seeds", f"must be positive, got {self.seeds}")
        if self.workers < 0:
            raise ParameterDomainError("workers", f"must be >= 0, got {self.workers}")
        if not (self.tolerance > 0):
            raise ParameterDomainError(
                "tolerance", f"must be positive, got {self.tolerance}"
            )

        for key in ("nx", "ny"):
            count = getattr(self, key)
            if count is not None and count < 1:
                raise ParameterDomainError(key, f"must be positive, got {count}")

        if self.coupling == CouplingRule.FIXED and self.h is None:
            if self.command == RunCommand.STUDY or (
                self.command in (RunCommand.SOLVE, RunCommand.MESH_INFO)
                and self.nx is None
            ):
                raise ParameterDomainError("h", "required by the fixed coupling")

    ###########################################################################

    def cells(
        self, N: int, domain: tuple[float, float, float, float] = (0.0, 1.0, 0.0, 1.0)
    ) -> tuple[int, int]:
        """
        :param N: Number of time steps.
        :type N: `int`

        :param domain: Bounds (x_min, x_max, y_min, y_max) the fixed rule
            divides into cells of width h.
        :type domain: `tuple[float, float, float, float]`

        :return: (nx, ny) given explicitly or by the coupling rule.
        :rtype: `tuple[int, int]`
        """

        if self.nx is not None:
            return self.nx, self.ny or self.nx

        x_min, x_max, y_min, y_max = domain

        return (
            self.coupling.cells(N, self.h, x_max - x_min),
            self.coupling.cells(N, self.h, y_max - y_min),
        )


###############################################################################
