###############################################################################
# tfac (C) tfac contributors 2026
#
# Executes a resolved RunConfig: runs the numerics of the sub-command, writes
# CSV and markdown artefacts and turns outcomes into an exit status
###############################################################################

from __future__ import annotations

import csv
import logging
from pathlib import Path
from typing import Callable, ClassVar

from tfac.alikhanov_kernels import AlikhanovKernels
from tfac.errors import KernelInvariantError, SolverError
from tfac.field_role import FieldRole
from tfac.graded_time_mesh import GradedTimeMesh
from tfac.gronwall import Gronwall
from tfac.manufactured_case import ManufacturedCase
from tfac.mixed_space import MixedSpace
from tfac.run_command import RunCommand
from tfac.run_config import RunConfig
from tfac.solver_flags import SolverFlags
from tfac.tfac_solver import TfacSolver
from tfac.triangle_mesh import TriangleMesh
from tfac.verification_harness import VerificationHarness

logger = logging.getLogger(__name__)

###############################################################################
# Implementation
###############################################################################


class Runner:
    EXIT_OK: ClassVar[int] = 0
    """All runs completed and all checks passed"""

    EXIT_FAILED: ClassVar[int] = 1
    """A run or a check failed, or an artefact could not be written"""

    EXIT_CONFIG: ClassVar[int] = 2
    """Invalid configuration"""

    CONFIG_NAME: ClassVar[str] = "config.txt"
    """Copy of the resolved configuration next to the artefacts"""

    ###########################################################################

    @staticmethod
    def execute(config: RunConfig) -> int:
        """
        Run a sub-command.

        :param config: Validated configuration.
        :type config: `RunConfig`

        :return: `EXIT_OK` or `EXIT_FAILED`.
        :rtype: `int`
        """

        handlers: dict[RunCommand, Callable[[RunConfig], list[str]]] = {
            RunCommand.SOLVE: Runner.__solve,
            RunCommand.STUDY: Runner.__study,
            RunCommand.KERNELS: Runner.__kernels,
            RunCommand.GRONWALL: Runner.__gronwall,
            RunCommand.MESH_INFO: Runner.__mesh_info,
        }

        try:
            config.output.mkdir(parents=True, exist_ok=True)
            config_path = config.output / Runner.CONFIG_NAME
            config_path.write_text(config.to_text(), encoding="utf-8")
            failures = handlers[config.command](config)
        except OSError as ex:
            logger.error("I/O failure on %s: %s", ex.filename or config.output, ex)
            return Runner.EXIT_FAILED
        except (SolverError, KernelInvariantError) as ex:
            logger.error("%s failed: %s", config.command.value, ex)
            return Runner.EXIT_FAILED

        for failure in failures:
            logger.error("%s", failure)

        return Runner.EXIT_FAILED if failures else Runner.EXIT_OK

    ###########################################################################

    @staticmethod
    def __alpha_tag(alpha: float) -> str:
        return f"alpha{alpha:g}"

    ###########################################################################

    @staticmethod
    def __case(config: RunConfig) -> ManufacturedCase:
        return ManufacturedCase.get_case(config.example).with_parameters(
            config.kappa, config.T
        )

    ###########################################################################

    @staticmethod
    def __write_rows(path: Path, header: list[str], rows: list[list]):
        with open(path, "w", encoding="utf-8", newline="") as stream:
            writer = csv.writer(stream, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(
                [repr(v) if isinstance(v, float) else v for v in row] for row in rows
            )

        logger.info("Wrote %s", path)

    ###########################################################################

    @staticmethod
    def __solve(config: RunConfig) -> list[str]:
        case = Runner.__case(config)
        N = config.N[0]
        nx, ny = config.cells(N, case.domain)

        tmesh = GradedTimeMesh(case.T, N, config.gamma, config.nu)
        mesh = TriangleMesh.build_structured_mesh(case.domain, nx, ny)
        space = MixedSpace(mesh, config.order)
        problem = case.problem(
            config.alpha, config.nu, SolverFlags.DEFAULT | SolverFlags.KEEP_FLUX_HISTORY
        )

        solver = TfacSolver(problem, tmesh, space, delta=config.delta)
        state = solver.run()
        E_u, E_sigma = VerificationHarness.weighted_errors(
            state, case, tmesh, space, config.alpha
        )

        prefix = config.output / f"solve_{case.name}"

        steps = [
            [
                n,
                float(tmesh.nodes[n]),
                state.residuals[n - 1],
                solver.temporal_residual(state, n),
                state.max_norms[n],
            ]
            for n in range(1, N + 1)
        ]
        Runner.__write_rows(
            Path(f"{prefix}_steps.csv"),
            ["n", "t", "residual", "temporal_residual", "max_abs_u"],
            steps,
        )

        restriction = state.restriction
        Runner.__write_rows(
            Path(f"{prefix}_summary.csv"),
            [
                "alpha",
                "gamma",
                "N",
                "nx",
                "ny",
                "h",
                "dt",
                "dt_star",
                "L_star",
                "restriction_met",
                "E_u",
                "E_sigma",
            ],
            [
                [
                    config.alpha,
                    config.gamma,
                    N,
                    nx,
                    ny,
                    mesh.h,
                    tmesh.max_step,
                    restriction.dt_star,
                    state.L_star,
                    restriction.satisfied,
                    E_u,
                    E_sigma,
                ]
            ],
        )

        if config.snapshots:
            state.write_snapshots(prefix, config.snapshots)

        print(
            f"case {case.name}: N = {N}, h = {mesh.h:.4g}, "
            f"E_u = {E_u:.3e}, E_sigma = {E_sigma:.3e}, dt* = {restriction.dt_star:.3e}"
        )

        failures: list[str] = []

        for n, _, residual, temporal, _ in steps:
            if not (temporal <= config.tolerance):
                failures.append(
                    f"history-sum residual {temporal:.3e} at step {n} above "
                    f"tolerance {config.tolerance:.1e}"
                )
            if not (residual <= config.tolerance):
                failures.append(
                    f"linear-solve residual {residual:.3e} at step {n} above "
                    f"tolerance {config.tolerance:.1e}"
                )

        return failures

    ###########################################################################

    @staticmethod
    def __study(config: RunConfig) -> list[str]:
        case = Runner.__case(config)

        report = VerificationHarness.convergence_study(
            case,
            config.alpha,
            config.N,
            coupling=config.coupling,
            order=config.order,
            gamma=config.gamma,
            nu=config.nu,
            h=config.h,
            workers=config.workers,
        )

        stem = config.output / f"study_{case.name}_{Runner.__alpha_tag(config.alpha)}"
        report.write_csv(Path(f"{stem}.csv"))

        markdown = report.to_markdown()
        Path(f"{stem}.md").write_text(markdown, encoding="utf-8")
        print(markdown, end="")

        return [
            f"study row N = {row.N} failed: {row.error}"
            for row in report.rows
            if not row.ok
        ]

    ###########################################################################

    @staticmethod
    def __kernels(config: RunConfig) -> list[str]:
        failures: list[str] = []
        tag = Runner.__alpha_tag(config.alpha)

        for N in config.N:
            tmesh = GradedTimeMesh(config.T, N, config.gamma, config.nu)
            tables = AlikhanovKernels.build_kernel_tables(tmesh, config.alpha)
            checks = AlikhanovKernels.check_kernel_properties(tables)

            Runner.__write_rows(
                config.output / f"kernels_{tag}_N{N}.csv",
                ["item", "status", "slack", "detail"],
                [[c.item, c.status.name, c.slack, c.detail] for c in checks],
            )

            if config.dump_tables:
                tables.write_csv(config.output / f"kernel_tables_{tag}_N{N}.csv")

            for check in checks:
                print(f"N = {N} {check.item}: {check.status.name} ({check.slack:.3e})")

            failures.extend(
                f"kernel property {c.item} failed at N = {N}: {c.detail}"
                for c in checks
                if c.status.is_failure
            )

        return failures

    ###########################################################################

    @staticmethod
    def __gronwall(config: RunConfig) -> list[str]:
        rows: list[list] = []
        failures: list[str] = []

        for N in config.N:
            tmesh = GradedTimeMesh(config.T, N, config.gamma, config.nu)

            for seed in range(config.seed, config.seed + config.seeds):
                report = Gronwall.verify_gronwall(
                    seed, config.alpha, tmesh, delta=config.delta
                )
                rows.append(
                    [
                        seed,
                        report.alpha,
                        report.gamma,
                        report.N,
                        report.holds,
                        report.min_slack,
                        report.step_condition_met,
                        report.c_delta,
                    ]
                )

                if not report.holds:
                    failures.append(
                        f"Gronwall bound violated: seed {seed}, N = {N}, "
                        f"slack {report.min_slack:.3e}"
                    )

        Runner.__write_rows(
            config.output / f"gronwall_{Runner.__alpha_tag(config.alpha)}.csv",
            [
                "seed",
                "alpha",
                "gamma",
                "N",
                "holds",
                "min_slack",
                "step_condition_met",
                "c_delta",
            ],
            rows,
        )

        print(f"{len(rows) - len(failures)} of {len(rows)} instances hold")

        return failures

    ###########################################################################

    @staticmethod
    def __mesh_info(config: RunConfig) -> list[str]:
        domain = (
            Runner.__case(config).domain
            if config.example is not None
            else (0.0, 1.0, 0.0, 1.0)
        )
        nx, ny = config.cells(config.N[0], domain)

        mesh = TriangleMesh.build_structured_mesh(domain, nx, ny)
        space = MixedSpace(mesh, config.order)

        print(f"domain {domain}, {nx} x {ny} cells, h = {mesh.h:.6g}")
        print(f"vertices {mesh.n_vertices}")
        print(f"triangles {mesh.n_triangles}")
        print(f"edges {mesh.n_edges}")
        print(f"flux dofs {space.dof_count(FieldRole.FLUX)}")
        print(f"scalar dofs {space.dof_count(FieldRole.SCALAR)}")

        if config.dump_tables:
            mesh.write_text(config.output / f"mesh_{nx}x{ny}.txt")

        return []


###############################################################################
