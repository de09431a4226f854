import math

import numpy as np
import pytest

from tests.conftest import (
    alikhanov_kernels_mod,
    errors_mod,
    graded_gamma,
    graded_time_mesh_mod,
    gronwall_instance_mod,
    gronwall_mod,
)

AlikhanovKernels = alikhanov_kernels_mod.AlikhanovKernels
GradedTimeMesh = graded_time_mesh_mod.GradedTimeMesh
Gronwall = gronwall_mod.Gronwall
GronwallInstance = gronwall_instance_mod.GronwallInstance
ParameterDomainError = errors_mod.ParameterDomainError


def graded_mesh(alpha: float, N: int = 16) -> GradedTimeMesh:
    return GradedTimeMesh(1.0, N, graded_gamma(alpha), alpha / 2.0)


class TestGronwallInstance:
    def test_generated_instance_meets_hypothesis_at_equality(self, graded_tables):
        instance = GronwallInstance.generate(3, graded_tables)

        for n in range(1, graded_tables.N + 1):
            scale = graded_tables.K[n, n] * instance.v[n] ** 2
            assert abs(instance.hypothesis_gap(n)) <= 1e-9 * max(scale, 1.0)

    def test_generation_is_reproducible(self, graded_tables):
        a = GronwallInstance.generate(11, graded_tables)
        b = GronwallInstance.generate(11, graded_tables)
        assert np.array_equal(a.v, b.v)
        assert np.array_equal(a.lam, b.lam)

    def test_data_respects_bounds(self, graded_tables):
        instance = GronwallInstance.generate(5, graded_tables, Lambda=2.0)

        assert np.all(instance.lam[1:].sum(axis=1) <= 2.0)
        assert np.all(instance.v >= 0)
        assert 0.5 <= instance.v[0] <= 1.5
        assert instance.xi[0] == instance.eta[0] == instance.zeta[0] == 0.0

    def test_c_delta(self, graded_tables):
        instance = GronwallInstance.generate(0, graded_tables, delta=3.0)
        assert instance.c_delta == pytest.approx(1.5)
        assert instance.alpha == graded_tables.alpha

    def test_rejects_negative_data(self, graded_tables):
        instance = GronwallInstance.generate(0, graded_tables)
        v = instance.v.copy()
        v[2] = -1.0

        with pytest.raises(ParameterDomainError) as info:
            GronwallInstance(
                graded_tables,
                v,
                instance.xi,
                instance.eta,
                instance.zeta,
                instance.lam,
                instance.Lambda,
            )
        assert info.value.key == "v"

    def test_rejects_row_sum_above_lambda(self, graded_tables):
        instance = GronwallInstance.generate(0, graded_tables)

        with pytest.raises(ParameterDomainError) as info:
            GronwallInstance(
                graded_tables,
                instance.v,
                instance.xi,
                instance.eta,
                instance.zeta,
                instance.lam,
                1.0e-6,
            )
        assert info.value.key == "Lambda"

    @pytest.mark.parametrize("delta, Lambda", [(1.0, 1.0), (2.0, 0.0)])
    def test_generate_rejects_invalid_constants(self, graded_tables, delta, Lambda):
        with pytest.raises(ParameterDomainError):
            GronwallInstance.generate(0, graded_tables, delta, Lambda)


class TestGronwall:
    @pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7, 0.9])
    def test_bound_dominates_random_instances(self, alpha: float):
        mesh = graded_mesh(alpha)

        for seed in range(100):
            report = Gronwall.verify_gronwall(seed, alpha, mesh)
            assert report.holds, report
            assert report.min_slack >= -1e-10

    def test_uniform_mesh(self):
        mesh = GradedTimeMesh(1.0, 32, 1.0, 0.25)
        reports = [Gronwall.verify_gronwall(seed, 0.5, mesh) for seed in range(20)]
        assert all(report.holds for report in reports)

    def test_report_fields(self):
        mesh = graded_mesh(0.5, 8)
        report = Gronwall.verify_gronwall(42, 0.5, mesh, delta=2.0)

        assert report.seed == 42
        assert report.N == 8
        assert report.gamma == mesh.gamma
        assert len(report.slacks) == 8
        assert report.min_slack == min(report.slacks)
        assert report.c_delta == pytest.approx(2.0)

    def test_bound_grows_with_n(self, graded_tables):
        instance = GronwallInstance.generate(1, graded_tables)
        bounds = [
            Gronwall.gronwall_bound(instance, n)
            for n in range(1, graded_tables.N + 1)
        ]
        assert bounds == sorted(bounds)

    def test_step_condition_without_lambda(self, graded_tables):
        instance = GronwallInstance.generate(1, graded_tables)
        quiet = GronwallInstance(
            graded_tables,
            instance.v,
            instance.xi,
            instance.eta,
            instance.zeta,
            np.zeros_like(instance.lam),
            instance.Lambda,
        )
        restriction = Gronwall.step_condition(quiet)

        assert restriction.satisfied
        assert math.isinf(restriction.dt_star)

    def test_bound_index_outside_range(self, graded_tables):
        instance = GronwallInstance.generate(1, graded_tables)
        with pytest.raises(IndexError):
            Gronwall.gronwall_bound(instance, graded_tables.N + 1)

    def test_violation_is_reported(self, graded_tables):
        instance = GronwallInstance.generate(1, graded_tables)
        inflated = instance.v * 1.0e6
        inflated[0] = instance.v[0]
        broken = GronwallInstance(
            graded_tables,
            inflated,
            instance.xi,
            instance.eta,
            instance.zeta,
            instance.lam,
            instance.Lambda,
        )
        report = Gronwall.verify_instance(broken, seed=9)

        assert not report.holds
        assert report.min_slack < 0
        assert report.seed == 9
