import csv
from pathlib import Path

import numpy as np
import pytest

from tests.conftest import (
    discrete_field_mod,
    field_role_mod,
    mixed_space_mod,
    solver_state_mod,
)

DiscreteField = discrete_field_mod.DiscreteField
FieldRole = field_role_mod.FieldRole
MixedSpace = mixed_space_mod.MixedSpace
SolverState = solver_state_mod.SolverState


def constant_state(space: MixedSpace, keep: bool) -> SolverState:
    """State with u^m = m and the flux (m, 0) for m = 0..2"""

    def flux(m: float) -> DiscreteField:
        return space.fortin_interpolate(lambda x, y: (m, 0.0))

    state = SolverState(
        scalar_history=[space.l2_project(lambda x, y: 0.0)],
        flux=flux(0.0),
        flux_history=[flux(0.0)] if keep else None,
        max_norms=[0.0],
    )

    for m in (1.0, 2.0):
        state.accept(flux(m), space.l2_project(lambda x, y: m), 1e-14, m)

    return state


class TestSolverState:
    def test_accept(self, unit_space):
        state = constant_state(unit_space, keep=True)

        assert state.n == 2
        assert len(state.flux_history) == 3
        assert state.residuals == [1e-14, 1e-14]
        assert state.max_norm() == 2.0
        assert unit_space.element_means(state.u) == pytest.approx(2.0)

    def test_accept_rejects_foreign_space(self, unit_space, symmetric_mesh):
        state = constant_state(unit_space, keep=False)
        other = MixedSpace(symmetric_mesh, unit_space.order)

        with pytest.raises(ValueError):
            state.accept(
                DiscreteField.zeros(other, FieldRole.FLUX),
                DiscreteField.zeros(other, FieldRole.SCALAR),
                0.0,
                0.0,
            )

    def test_flux_at(self, unit_space):
        kept = constant_state(unit_space, keep=True)
        latest = constant_state(unit_space, keep=False)

        assert kept.flux_at(2) is kept.flux
        moments = unit_space.flux_moments(kept.flux_at(1))[:, 0]
        assert not np.allclose(moments, 0.0)
        assert latest.flux_at(2) is latest.flux
        with pytest.raises(ValueError):
            latest.flux_at(1)

    def test_max_norm_of_empty_record(self, unit_space):
        state = SolverState(
            scalar_history=[DiscreteField.zeros(unit_space, FieldRole.SCALAR)],
            flux=DiscreteField.zeros(unit_space, FieldRole.FLUX),
        )

        assert state.max_norm() == 0.0


class TestSnapshots:
    def test_write_snapshots(self, unit_space, tmp_path: Path):
        state = constant_state(unit_space, keep=True)
        paths = state.write_snapshots(tmp_path / "run", [0, 2])

        assert [path.name for path in paths] == [
            "run_step0_scalar.csv",
            "run_step0_flux.csv",
            "run_step2_scalar.csv",
            "run_step2_flux.csv",
        ]

        with open(paths[2], encoding="utf-8") as stream:
            rows = list(csv.reader(stream))

        assert rows[0] == ["triangle", "mean"]
        assert len(rows) == unit_space.mesh.n_triangles + 1
        assert float(rows[1][1]) == pytest.approx(2.0)

        with open(paths[3], encoding="utf-8") as stream:
            rows = list(csv.reader(stream))

        expected = ["edge", "v0", "v1"]
        expected += [f"moment_{q}" for q in range(unit_space.order + 1)]

        assert rows[0] == expected
        assert len(rows) == unit_space.mesh.n_edges + 1

    def test_snapshot_outside_history(self, unit_space, tmp_path: Path):
        state = constant_state(unit_space, keep=True)

        with pytest.raises(IndexError):
            state.write_snapshots(tmp_path / "run", [3])

    def test_snapshot_needs_flux_history(self, unit_space, tmp_path: Path):
        state = constant_state(unit_space, keep=False)

        assert len(state.write_snapshots(tmp_path / "run", [2])) == 2
        with pytest.raises(ValueError):
            state.write_snapshots(tmp_path / "run", [1])
