###############################################################################
# tfac (C) tfac contributors 2026
#
# Lower-triangular tables of the discrete Caputo kernels K[n, j] and of their
# complementary kernels P[n, j], together with the Alikhanov coefficients
# a[n, j] and b[n, j] they were built from. Tables use 1-based indices: row
# and column 0 are unused and stay zero
###############################################################################

from __future__ import annotations

import csv
from pathlib import Path
from typing import TYPE_CHECKING, Sequence

import numpy as np

if TYPE_CHECKING:
    from tfac.graded_time_mesh import GradedTimeMesh

###############################################################################
# Implementation
###############################################################################


class KernelTables:
    def __init__(
        self,
        alpha: float,
        mesh: GradedTimeMesh,
        K: np.ndarray,
        P: np.ndarray,
        a: np.ndarray,
        b: np.ndarray,
    ):
        """
        Constructor: takes ownership of the tables and freezes them.

        :param alpha: Fractional order in (0, 1).
        :type alpha: `float`

        :param mesh: Mesh the tables were built on.
        :type mesh: `GradedTimeMesh`

        :param K: Discrete kernels, shape (N + 1, N + 1).
        :type K: `np.ndarray`

        :param P: Complementary kernels, same shape.
        :type P: `np.ndarray`

        :param a: Coefficients a[n, j], 1 <= j <= n.
        :type a: `np.ndarray`

        :param b: Coefficients b[n, j], 1 <= j <= n - 1.
        :type b: `np.ndarray`
        """

        for table in (K, P, a, b):
            table.setflags(write=False)

        self.alpha: float = alpha
        self.mesh: GradedTimeMesh = mesh
        self.K: np.ndarray = K
        self.P: np.ndarray = P
        self.a: np.ndarray = a
        self.b: np.ndarray = b

    ###########################################################################

    @property
    def N(self) -> int:
        return self.mesh.N

    ###########################################################################

    def discrete_caputo(self, history: Sequence, n: int) -> np.ndarray:
        """
        Alikhanov approximation of the Caputo derivative at t_{n-nu}:
        sum_{j=1..n} K[n, j] * (phi^j - phi^{j-1}).

        :param history: phi^0..phi^n (at least n + 1 entries of equal shape,
            scalars or arrays).
        :type history: `Sequence`

        :param n: Step index, 1..N.
        :type n: `int`

        :return: Record of the same shape as a history entry.
        :rtype: `np.ndarray`
        """

        stacked = self.__stack(history, n + 1, n)

        return np.tensordot(self.K[n, 1 : n + 1], np.diff(stacked, axis=0), axes=1)

    ###########################################################################

    def history_sum(self, history: Sequence, n: int) -> np.ndarray:
        """
        Part of the discrete Caputo operator known before step n is solved:
        sum_{j=1..n-1} K[n, j] * (phi^j - phi^{j-1}).

        :param history: phi^0..phi^{n-1} (at least n entries).
        :type history: `Sequence`

        :param n: Step index, 1..N.
        :type n: `int`

        :return: Record of the same shape as a history entry (zero for n = 1).
        :rtype: `np.ndarray`
        """

        stacked = self.__stack(history, n, n)

        if n == 1:
            return np.zeros_like(stacked[0])

        return np.tensordot(self.K[n, 1:n], np.diff(stacked, axis=0), axes=1)

    ###########################################################################

    def quadratic_form_slack(self, v: Sequence[float]) -> float:
        """
        Smallest value over n of
        sum_j K[n, j] (v^j - v^{j-1}) v^{n-nu}
            - 1/2 sum_j K[n, j] ((v^j)^2 - (v^{j-1})^2),
        which is non-negative whenever the positive-definiteness property of
        the kernels holds.

        :param v: Real sequence v^0..v^N.
        :type v: `Sequence[float]`

        :return: Minimum slack over n = 1..N.
        :rtype: `float`
        """

        values = np.asarray(v, dtype=float)

        if values.shape != (self.N + 1,):
            raise ValueError(f"Expected {self.N + 1} values, got {values.shape}")

        nu = self.mesh.nu
        jumps = np.diff(values)
        square_jumps = np.diff(values**2)
        offsets = nu * values[:-1] + (1.0 - nu) * values[1:]

        linear = self.K[1:, 1:] @ jumps
        quadratic = self.K[1:, 1:] @ square_jumps

        return float(np.min(linear * offsets - 0.5 * quadratic))

    ###########################################################################

    def write_csv(self, path: Path):
        """
        Dump K and P as rows of (table, row, col, value).

        :param path: Destination file.
        :type path: `Path`
        """

        with open(path, "w", encoding="utf-8", newline="") as stream:
            writer = csv.writer(stream, lineterminator="\n")
            writer.writerow(["table", "row", "col", "value"])

            for name, table in (("K", self.K), ("P", self.P)):
                for n in range(1, self.N + 1):
                    for j in range(1, n + 1):
                        writer.writerow([name, n, j, repr(float(table[n, j]))])

    ###########################################################################

    @staticmethod
    def __stack(history: Sequence, count: int, n: int) -> np.ndarray:
        if len(history) < count:
            raise ValueError(
                f"History for step {n} needs {count} entries, got {len(history)}"
            )

        entries = [np.asarray(entry, dtype=float) for entry in history[:count]]
        shape = entries[0].shape

        for index, entry in enumerate(entries):
            if entry.shape != shape:
                raise ValueError(
                    f"History entry {index} has shape {entry.shape}, "
                    f"expected {shape}"
                )

        return np.stack(entries)


###############################################################################
