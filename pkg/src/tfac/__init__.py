import logging

from . import errors
from . import check_status
from . import field_role
from . import solver_flags
from . import coupling_rule
from . import run_command
from . import mittag_leffler
from . import kernel_tables
from . import alikhanov_kernels
from . import graded_time_mesh
from . import gronwall_instance
from . import gronwall
from . import triangle_quadrature
from . import triangle_mesh
from . import discrete_field
from . import mixed_space
from . import mixed_forms
from . import problem_spec
from . import step_system
from . import solver_state
from . import tfac_solver
from . import separable_profile
from . import manufactured_case
from . import rate_report
from . import convergence_report
from . import verification_harness
from . import config_file
from . import run_config
from . import runner

logging.getLogger(__name__).addHandler(logging.NullHandler())
