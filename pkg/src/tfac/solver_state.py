###############################################################################
# tfac (C) tfac contributors 2026
#
# Trajectory of the solver: the full scalar history u^0..u^n needed by the
# history sum, the latest flux (optionally all fluxes) and per-step
# diagnostics
###############################################################################

from __future__ import annotations

import csv
from dataclasses import dataclass, field
import logging
from pathlib import Path
from typing import Iterable

import numpy as np

from tfac.discrete_field import DiscreteField
from tfac.graded_time_mesh import StepRestriction

logger = logging.getLogger(__name__)

###############################################################################
# Implementation
###############################################################################


@dataclass(eq=False)
class SolverState:
    scalar_history: list[DiscreteField]
    """u^0..u^n"""

    flux: DiscreteField
    """sigma^n"""

    flux_history: list[DiscreteField] | None = None
    """sigma^0..sigma^n when kept, None otherwise"""

    max_norms: list[float] = field(default_factory=list)
    """Largest |u_h^m| at quadrature points for m = 0..n"""

    residuals: list[float] = field(default_factory=list)
    """Relative residual of step m at index m - 1"""

    restriction: StepRestriction | None = None
    """Time-step check of a completed run"""

    L_star: float | None = None
    """6 + 27 * (max norm)^4 of a completed run"""

    ###########################################################################

    @property
    def n(self) -> int:
        """Index of the latest accepted step"""

        return len(self.scalar_history) - 1

    ###########################################################################

    @property
    def u(self) -> DiscreteField:
        return self.scalar_history[-1]

    ###########################################################################

    def accept(
        self, sigma: DiscreteField, u: DiscreteField, residual: float, max_norm: float
    ):
        """
        Append a solved step.

        :param sigma: Flux sigma^n.
        :type sigma: `DiscreteField`

        :param u: Scalar u^n.
        :type u: `DiscreteField`

        :param residual: Relative residual of the linear solve.
        :type residual: `float`

        :param max_norm: Largest |u^n| at quadrature points.
        :type max_norm: `float`
        """

        if u.space is not self.u.space or sigma.space is not self.flux.space:
            raise ValueError("All fields of a trajectory must share one space")

        self.scalar_history.append(u)
        self.flux = sigma

        if self.flux_history is not None:
            self.flux_history.append(sigma)

        self.residuals.append(residual)
        self.max_norms.append(max_norm)

    ###########################################################################

    def flux_at(self, m: int) -> DiscreteField:
        """
        :param m: Step index, 0..n.
        :type m: `int`

        :return: sigma^m.
        :rtype: `DiscreteField`
        """

        if m == self.n:
            return self.flux

        if self.flux_history is None:
            raise ValueError(f"Flux of step {m} was not kept")

        return self.flux_history[m]

    ###########################################################################

    def write_snapshots(self, prefix: Path, steps: Iterable[int]) -> list[Path]:
        """
        For every selected step write a CSV of element-wise scalar means and
        a CSV of edge flux moments.

        :param prefix: Path prefix; `_step<m>_scalar.csv` and
            `_step<m>_flux.csv` are appended.
        :type prefix: `Path`

        :param steps: Step indices, 0..n.
        :type steps: `Iterable[int]`

        :return: Paths written.
        :rtype: `list[Path]`
        """

        space = self.u.space
        edges = space.mesh.edges
        written: list[Path] = []

        for m in steps:
            if not (0 <= m <= self.n):
                raise IndexError(f"Snapshot step {m} is outside 0..{self.n}")

            scalar_path = Path(f"{prefix}_step{m}_scalar.csv")
            means = space.element_means(self.scalar_history[m])

            with open(scalar_path, "w", encoding="utf-8", newline="") as stream:
                writer = csv.writer(stream, lineterminator="\n")
                writer.writerow(["triangle", "mean"])
                writer.writerows([t, repr(float(v))] for t, v in enumerate(means))

            flux_path = Path(f"{prefix}_step{m}_flux.csv")
            moments = space.flux_moments(self.flux_at(m))
            header = ["edge", "v0", "v1"]
            header += [f"moment_{q}" for q in range(moments.shape[1])]

            with open(flux_path, "w", encoding="utf-8", newline="") as stream:
                writer = csv.writer(stream, lineterminator="\n")
                writer.writerow(header)

                for e, (row, ends) in enumerate(zip(moments, edges)):
                    writer.writerow(
                        [e, int(ends[0]), int(ends[1])]
                        + [repr(float(value)) for value in row]
                    )

            written.extend([scalar_path, flux_path])
            logger.debug("Wrote snapshot of step %d", m)

        return written

    ###########################################################################

    def max_norm(self) -> float:
        return float(np.max(self.max_norms)) if self.max_norms else 0.0


###############################################################################
