from dataclasses import replace
import math

import numpy as np
import pytest
from pytest_mock import MockerFixture

from tests.conftest import (
    coupling_rule_mod,
    discrete_field_mod,
    errors_mod,
    field_role_mod,
    graded_gamma,
    graded_time_mesh_mod,
    manufactured_case_mod,
    mixed_space_mod,
    solver_state_mod,
    tfac_solver_mod,
    triangle_mesh_mod,
    verification_harness_mod,
)

CouplingRule = coupling_rule_mod.CouplingRule
DiscreteField = discrete_field_mod.DiscreteField
FieldRole = field_role_mod.FieldRole
GradedTimeMesh = graded_time_mesh_mod.GradedTimeMesh
ManufacturedCase = manufactured_case_mod.ManufacturedCase
MixedSpace = mixed_space_mod.MixedSpace
ParameterDomainError = errors_mod.ParameterDomainError
SolverError = errors_mod.SolverError
SolverState = solver_state_mod.SolverState
TriangleMesh = triangle_mesh_mod.TriangleMesh
VerificationHarness = verification_harness_mod.VerificationHarness


def zero_state(space: MixedSpace, N: int) -> SolverState:
    state = SolverState(
        scalar_history=[DiscreteField.zeros(space, FieldRole.SCALAR)],
        flux=DiscreteField.zeros(space, FieldRole.FLUX),
        flux_history=[DiscreteField.zeros(space, FieldRole.FLUX)],
    )

    for _ in range(N):
        state.accept(
            DiscreteField.zeros(space, FieldRole.FLUX),
            DiscreteField.zeros(space, FieldRole.SCALAR),
            0.0,
            0.0,
        )

    return state


class TestWeightedErrors:
    def test_vanishing_solution_has_no_error(self, unit_space):
        case = replace(ManufacturedCase.get_case("6.1"), amplitude=0.0)
        tmesh = GradedTimeMesh(1.0, 3, 2.0, 0.25)

        errors = VerificationHarness.weighted_errors(
            zero_state(unit_space, 3), case, tmesh, unit_space, 0.5
        )

        assert errors == (0.0, 0.0)

    def test_errors_are_time_weighted(self, unit_space):
        case = ManufacturedCase.get_case("6.1")
        tmesh = GradedTimeMesh(1.0, 2, 1.0, 0.25)
        E_u, _ = VerificationHarness.weighted_errors(
            zero_state(unit_space, 2), case, tmesh, unit_space, 0.5
        )

        # With u_h = 0 the error is ||u(t)|| = ||g|| (1 + t^alpha), largest at t = 1

        norm_g = unit_space.l2_error(
            DiscreteField.zeros(unit_space, FieldRole.SCALAR), case.g
        )
        assert E_u == pytest.approx(2.0 * norm_g)

    def test_rejects_incomplete_trajectory(self, unit_space):
        case = ManufacturedCase.get_case("6.1")

        with pytest.raises(ValueError):
            VerificationHarness.weighted_errors(
                zero_state(unit_space, 2),
                case,
                GradedTimeMesh(1.0, 3, 1.0, 0.25),
                unit_space,
                0.5,
            )


class TestConvergenceStudy:
    def test_default_gamma(self):
        assert VerificationHarness.default_gamma(0.5) == pytest.approx(4.1)

    def test_small_study(self):
        case = ManufacturedCase.get_case("6.1")
        report = VerificationHarness.convergence_study(case, 0.5, [2, 4], order=0)

        assert report.ok
        assert report.case == "6.1"
        assert report.gamma == pytest.approx(4.1)
        assert report.coupling == "half-inverse"
        assert [row.N for row in report.rows] == [2, 4]

        first, second = report.rows
        assert first.h == pytest.approx(math.sqrt(2.0) / 4.0)
        assert second.h == pytest.approx(math.sqrt(2.0) / 8.0)
        assert second.E_u < first.E_u
        assert second.R_u_h is not None
        assert first.dt_star > 0

    def test_fixed_coupling(self):
        case = ManufacturedCase.get_case("6.2")
        report = VerificationHarness.convergence_study(
            case, 0.6, [2, 3], coupling=CouplingRule.FIXED, order=0, h=0.5
        )

        assert report.ok
        # Cells of width 0.5 across (-1, 1)
        assert all(row.h == pytest.approx(math.sqrt(2.0) / 2.0) for row in report.rows)
        assert report.rows[1].R_u_h is None

    def test_failed_run_poisons_its_row(self, mocker: MockerFixture):
        mocker.patch.object(
            tfac_solver_mod.TfacSolver,
            "run",
            side_effect=SolverError(2, "non-finite field"),
        )
        case = ManufacturedCase.get_case("6.1")
        report = VerificationHarness.convergence_study(case, 0.5, [2, 4], order=0)

        assert not report.ok
        assert all(math.isnan(row.h) for row in report.rows)
        assert report.rows[0].error == "step 2: non-finite field"

    def test_odd_cell_count_poisons_its_row(self):
        case = ManufacturedCase.get_case("6.3")
        report = VerificationHarness.convergence_study(
            case, 0.5, [2], coupling=CouplingRule.FIXED, order=0, h=2.0 / 3.0
        )

        assert not report.ok
        assert "kink" in report.rows[0].error

    @pytest.mark.parametrize("N_list", [[], [4, 4], [8, 4]])
    def test_rejects_unordered_steps(self, N_list):
        with pytest.raises(ParameterDomainError) as info:
            VerificationHarness.convergence_study(
                ManufacturedCase.get_case("6.1"), 0.5, N_list
            )
        assert info.value.key == "N"

    def test_workers_use_a_process_pool(self, mocker: MockerFixture):
        pool = mocker.patch.object(verification_harness_mod, "ProcessPoolExecutor")
        pool.return_value.__enter__.return_value.map.side_effect = map

        case = ManufacturedCase.get_case("6.1")
        report = VerificationHarness.convergence_study(
            case, 0.5, [2, 4], order=0, workers=2
        )

        pool.assert_called_once_with(max_workers=2)
        assert report.ok
        assert len(report.rows) == 2


class TestTruncation:
    def test_power_profile(self):
        phi, caputo = VerificationHarness.power_profile(2.0, 0.5)
        t = np.array([0.25, 1.0])

        assert np.allclose(phi(t), t**2)
        assert np.allclose(caputo(t), 2.0 / math.gamma(2.5) * t**1.5)

    def test_power_profile_rejects_exponent(self):
        with pytest.raises(ParameterDomainError):
            VerificationHarness.power_profile(0.0, 0.5)

    @pytest.mark.parametrize("gamma", [1.0, 3.0])
    def test_linear_functions_are_exact(self, gamma: float):
        report = VerificationHarness.measure_upsilon(
            0.6, gamma, [8, 16], VerificationHarness.power_profile(1.0, 0.6)
        )

        assert max(report.values) < 1e-9
        assert max(report.extras["raw"]) < 1e-9

    @pytest.mark.parametrize("alpha", [0.4, 0.8])
    @pytest.mark.parametrize("graded", [False, True])
    def test_orders(self, alpha: float, graded: bool):
        gamma = graded_gamma(alpha) if graded else 1.0
        report = VerificationHarness.measure_upsilon(alpha, gamma, [32, 64, 128, 256])

        assert report.expected == pytest.approx(min(gamma * alpha, 2.0))
        assert report.final_order == pytest.approx(report.expected, abs=0.25)
        assert len(report.extras["p_sum"]) == 4


class TestNewtonRemainder:
    def test_identity(self):
        rng = np.random.default_rng(7)
        u_prev, u_now = rng.normal(size=50), rng.normal(size=50)
        nu = 0.3
        u_offset = nu * u_prev + (1 - nu) * u_now

        linearized = u_prev**3 + 3 * u_prev**2 * (u_offset - u_prev)
        remainder = VerificationHarness.newton_remainder(u_prev, u_now, nu)

        assert np.allclose(remainder, u_offset**3 - linearized, atol=1e-12)

    def test_vanishing_solution(self):
        case = replace(ManufacturedCase.get_case("6.2"), amplitude=0.0)
        report = VerificationHarness.measure_newton_remainder(
            case, 0.5, 4.1, [4, 8], cells=4
        )

        assert report.values == (0.0, 0.0)
        assert report.orders == (None,)

    def test_second_order_decay(self):
        case = ManufacturedCase.get_case("6.1")
        report = VerificationHarness.measure_newton_remainder(
            case, 0.5, graded_gamma(0.5), [32, 64], cells=8
        )

        assert report.expected == 2.0
        assert report.final_order == pytest.approx(2.0, abs=0.3)
        assert len(report.extras["profile"][1]) == 64
        assert report.extras["max"][1] >= report.values[1]


@pytest.mark.slow
class TestReferenceTables:
    def test_smooth_case(self):
        case = ManufacturedCase.get_case("6.1")
        report = VerificationHarness.convergence_study(case, 0.8, [8, 16, 32, 64])
        last = report.rows[-1]

        assert report.ok
        for rate, expected in zip(
            (last.R_u_h, last.R_u_dt, last.R_sigma_h, last.R_sigma_dt),
            (1.98, 2.02, 1.97, 2.00),
        ):
            assert rate == pytest.approx(expected, abs=0.15)

        assert 7.816e-5 / 2 <= last.E_u <= 7.816e-5 * 2
        assert 3.132e-4 / 2 <= last.E_sigma <= 3.132e-4 * 2

    def test_smooth_case_flux_at_low_order(self):
        case = ManufacturedCase.get_case("6.1")
        report = VerificationHarness.convergence_study(case, 0.4, [32, 64])

        assert 3.159e-4 / 2 <= report.rows[-1].E_sigma <= 3.159e-4 * 2

    @pytest.mark.parametrize("name", ["6.2", "6.4"])
    def test_nonsmooth_cases(self, name: str):
        case = ManufacturedCase.get_case(name)
        report = VerificationHarness.convergence_study(case, 0.6, [32, 64])

        assert report.rows[-1].R_u_h == pytest.approx(1.98, abs=0.2)
