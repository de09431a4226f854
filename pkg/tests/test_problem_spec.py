import pytest

from tests.conftest import errors_mod, problem_spec_mod, solver_flags_mod

ParameterDomainError = errors_mod.ParameterDomainError
ProblemSpec = problem_spec_mod.ProblemSpec
SolverFlags = solver_flags_mod.SolverFlags


def zero(x, y):
    return 0.0


class TestProblemSpec:
    def test_defaults(self):
        problem = ProblemSpec(kappa=0.5, alpha=0.6, u0=zero)

        assert problem.nu == pytest.approx(0.3)
        assert problem.source is None
        assert problem.flags == SolverFlags.DEFAULT
        assert problem.is_nonlinear
        assert problem.scheme_kappa2 == pytest.approx(0.25)

    def test_linear_without_kappa(self):
        problem = ProblemSpec(kappa=0.5, alpha=0.6, u0=zero, flags=SolverFlags.NONE)

        assert not problem.is_nonlinear
        assert problem.scheme_kappa2 == 1.0

    def test_explicit_offset(self):
        assert ProblemSpec(kappa=1.0, alpha=0.6, u0=zero, nu=0.0).nu == 0.0

    @pytest.mark.parametrize(
        "kwargs, key",
        [
            ({"kappa": 0.0}, "kappa"),
            ({"kappa": 1.5}, "kappa"),
            ({"alpha": 0.0}, "alpha"),
            ({"alpha": 1.0}, "alpha"),
            ({"nu": 0.5}, "nu"),
            ({"nu": -0.1}, "nu"),
        ],
    )
    def test_domains(self, kwargs: dict, key: str):
        values = {"kappa": 1.0, "alpha": 0.5, "u0": zero}
        values.update(kwargs)

        with pytest.raises(ParameterDomainError) as info:
            ProblemSpec(**values)
        assert info.value.key == key


class TestSolverFlags:
    def test_default_combination(self):
        assert SolverFlags.NONLINEAR in SolverFlags.DEFAULT
        assert SolverFlags.KAPPA_IN_SCHEME in SolverFlags.DEFAULT
        assert SolverFlags.KEEP_FLUX_HISTORY not in SolverFlags.DEFAULT

    def test_round_trip_through_int(self):
        flags = SolverFlags.DEFAULT | SolverFlags.KEEP_FLUX_HISTORY

        assert SolverFlags(int(flags)) == flags
