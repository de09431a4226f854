from pathlib import Path
import sys

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

import tfac  # noqa: E402
import tfac.alikhanov_kernels as alikhanov_kernels_mod  # noqa: E402
import tfac.check_status as check_status_mod  # noqa: E402
import tfac.config_file as config_file_mod  # noqa: E402
import tfac.convergence_report as convergence_report_mod  # noqa: E402
import tfac.coupling_rule as coupling_rule_mod  # noqa: E402
import tfac.discrete_field as discrete_field_mod  # noqa: E402
import tfac.errors as errors_mod  # noqa: E402
import tfac.field_role as field_role_mod  # noqa: E402
import tfac.graded_time_mesh as graded_time_mesh_mod  # noqa: E402
import tfac.gronwall as gronwall_mod  # noqa: E402
import tfac.gronwall_instance as gronwall_instance_mod  # noqa: E402
import tfac.kernel_tables as kernel_tables_mod  # noqa: E402
import tfac.manufactured_case as manufactured_case_mod  # noqa: E402
import tfac.mittag_leffler as mittag_leffler_mod  # noqa: E402
import tfac.mixed_forms as mixed_forms_mod  # noqa: E402
import tfac.mixed_space as mixed_space_mod  # noqa: E402
import tfac.problem_spec as problem_spec_mod  # noqa: E402
import tfac.rate_report as rate_report_mod  # noqa: E402
import tfac.run_command as run_command_mod  # noqa: E402
import tfac.run_config as run_config_mod  # noqa: E402
import tfac.runner as runner_mod  # noqa: E402
import tfac.separable_profile as separable_profile_mod  # noqa: E402
import tfac.solver_flags as solver_flags_mod  # noqa: E402
import tfac.solver_state as solver_state_mod  # noqa: E402
import tfac.step_system as step_system_mod  # noqa: E402
import tfac.tfac_solver as tfac_solver_mod  # noqa: E402
import tfac.triangle_mesh as triangle_mesh_mod  # noqa: E402
import tfac.triangle_quadrature as triangle_quadrature_mod  # noqa: E402
import tfac.verification_harness as verification_harness_mod  # noqa: E402

tfac_mod = tfac

ALPHAS = (0.4, 0.6, 0.8, 0.99)
"""Fractional orders of the reference experiments"""


def graded_gamma(alpha: float) -> float:
    return 2.0 / alpha + 0.1


@pytest.fixture
def unit_mesh():
    """4 x 4 right-diagonal triangulation of the unit square"""

    return triangle_mesh_mod.TriangleMesh.build_structured_mesh(
        (0.0, 1.0, 0.0, 1.0), 4, 4
    )


@pytest.fixture
def symmetric_mesh():
    """4 x 4 triangulation of (-1, 1)^2 with the axes as grid lines"""

    return triangle_mesh_mod.TriangleMesh.build_structured_mesh(
        (-1.0, 1.0, -1.0, 1.0), 4, 4
    )


@pytest.fixture(params=[0, 1], ids=["k0", "k1"])
def unit_space(request, unit_mesh):
    return mixed_space_mod.MixedSpace(unit_mesh, request.param)


@pytest.fixture
def graded_tables():
    """Kernel tables on a graded 16-step mesh at alpha = 0.5"""

    alpha = 0.5
    mesh = graded_time_mesh_mod.GradedTimeMesh(1.0, 16, graded_gamma(alpha), alpha / 2)

    return alikhanov_kernels_mod.AlikhanovKernels.build_kernel_tables(mesh, alpha)
