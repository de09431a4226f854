###############################################################################
# tfac (C) tfac contributors 2026
#
# Rows of a refinement study and the log-ratio convergence rates between
# consecutive rows, with CSV (full precision) and markdown (4 significant
# digits) output
###############################################################################

from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace
import logging
import math
from pathlib import Path
from typing import ClassVar

logger = logging.getLogger(__name__)

###############################################################################
# Implementation
###############################################################################


@dataclass(frozen=True)
class ConvergenceRow:
    alpha: float
    gamma: float
    N: int
    h: float
    dt_max: float
    dt_star: float = math.nan
    E_u: float = math.nan
    E_sigma: float = math.nan
    R_u_h: float | None = None
    R_u_dt: float | None = None
    R_sigma_h: float | None = None
    R_sigma_dt: float | None = None
    error: str | None = None
    """Failure message of a poisoned row"""

    ###########################################################################

    @property
    def ok(self) -> bool:
        return self.error is None


###############################################################################


@dataclass(frozen=True)
class ConvergenceReport:
    case: str
    """Name of the manufactured case"""

    alpha: float
    gamma: float
    coupling: str
    rows: tuple[ConvergenceRow, ...] = field(default_factory=tuple)

    COLUMNS: ClassVar[tuple[str, ...]] = (
        "N",
        "h",
        "dt_star",
        "dt_max",
        "E_u",
        "R_u_h",
        "R_u_dt",
        "E_sigma",
        "R_sigma_h",
        "R_sigma_dt",
    )
    """Column layout of the reference tables (h and N added in front)"""

    MARKDOWN_HEADERS: ClassVar[tuple[str, ...]] = (
        "N",
        "h",
        "Δt*",
        "Δt",
        "E_u",
        "R_{u,h}",
        "R_{u,Δt}",
        "E_σ",
        "R_{σ,h}",
        "R_{σ,Δt}",
    )
    """Headers of the markdown mirror"""

    ###########################################################################

    @property
    def ok(self) -> bool:
        return all(row.ok for row in self.rows)

    ###########################################################################

    @staticmethod
    def from_rows(
        case: str, alpha: float, gamma: float, coupling: str, rows
    ) -> ConvergenceReport:
        """
        Attach rates to rows ordered by increasing N. A rate is computed only
        between a row and its predecessor and only when both succeeded and
        the ratio is defined.

        :param case: Case name.
        :type case: `str`

        :param alpha: Fractional order.
        :type alpha: `float`

        :param gamma: Grading parameter.
        :type gamma: `float`

        :param coupling: Coupling rule value.
        :type coupling: `str`

        :param rows: Rows without rates.
        :type rows: `Iterable[ConvergenceRow]`

        :return: New report.
        :rtype: `ConvergenceReport`
        """

        rows = list(rows)
        rated: list[ConvergenceRow] = []

        for index, row in enumerate(rows):
            if index == 0 or not (row.ok and rows[index - 1].ok):
                rated.append(row)
                continue

            prev = rows[index - 1]
            rated.append(
                replace(
                    row,
                    R_u_h=ConvergenceReport.rate(prev.E_u, row.E_u, prev.h, row.h),
                    R_u_dt=ConvergenceReport.rate(
                        prev.E_u, row.E_u, prev.dt_max, row.dt_max
                    ),
                    R_sigma_h=ConvergenceReport.rate(
                        prev.E_sigma, row.E_sigma, prev.h, row.h
                    ),
                    R_sigma_dt=ConvergenceReport.rate(
                        prev.E_sigma, row.E_sigma, prev.dt_max, row.dt_max
                    ),
                )
            )

        return ConvergenceReport(case, alpha, gamma, coupling, tuple(rated))

    ###########################################################################

    @staticmethod
    def rate(e1: float, e2: float, s1: float, s2: float) -> float | None:
        """
        :return: log(e1 / e2) / log(s1 / s2), or None when undefined (a zero
            or non-finite error, or equal sizes).
        :rtype: `float` | `None`
        """

        values = (e1, e2, s1, s2)

        if not all(math.isfinite(v) and v > 0 for v in values) or s1 == s2:
            return None

        return math.log(e1 / e2) / math.log(s1 / s2)

    ###########################################################################

    def write_csv(self, path: Path):
        """
        Write all rows at full precision; absent values are empty cells and
        a poisoned row carries its message in the last column.

        :param path: Destination file.
        :type path: `Path`
        """

        with open(path, "w", encoding="utf-8", newline="") as stream:
            writer = csv.writer(stream, lineterminator="\n")
            writer.writerow(("alpha", "gamma") + self.COLUMNS + ("error",))

            for row in self.rows:
                values = [getattr(row, name) for name in self.COLUMNS]
                writer.writerow(
                    [repr(row.alpha), repr(row.gamma)]
                    + [ConvergenceReport.__csv_cell(value) for value in values]
                    + [row.error or ""]
                )

        logger.debug("Wrote %s", path)

    ###########################################################################

    def to_markdown(self) -> str:
        """
        :return: Aligned markdown table, 4 significant digits.
        :rtype: `str`
        """

        table = [list(self.MARKDOWN_HEADERS)]

        for row in self.rows:
            if not row.ok:
                table.append([str(row.N)] + ["failed"] * (len(self.COLUMNS) - 1))
                continue

            cells = [str(row.N)]
            cells += [
                ConvergenceReport.__md_cell(getattr(row, name), name.startswith("R"))
                for name in self.COLUMNS[1:]
            ]
            table.append(cells)

        widths = [max(len(line[c]) for line in table) for c in range(len(table[0]))]

        def render(cells: list[str]) -> str:
            return "| " + " | ".join(c.rjust(w) for c, w in zip(cells, widths)) + " |"

        lines = [
            f"Case {self.case}, alpha = {self.alpha:g}, gamma = {self.gamma:.4g}, "
            f"coupling {self.coupling}",
            "",
            render(table[0]),
            "|" + "|".join("-" * (w + 1) + ":" for w in widths) + "|",
        ]
        lines.extend(render(cells) for cells in table[1:])

        return "\n".join(lines) + "\n"

    ###########################################################################

    @staticmethod
    def __csv_cell(value) -> str:
        if value is None or (isinstance(value, float) and math.isnan(value)):
            return ""

        return repr(value) if isinstance(value, float) else str(value)

    ###########################################################################

    @staticmethod
    def __md_cell(value, is_rate: bool) -> str:
        if value is None or (isinstance(value, float) and math.isnan(value)):
            return "-"
        if is_rate:
            return f"{value:.2f}"

        return f"{value:.3e}"


###############################################################################
