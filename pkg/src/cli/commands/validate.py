"""Cross-check the matrix-free operators of a job against dense oracles."""

import argparse
import time
from collections.abc import Callable

import numpy as np

from src.chebfilter import matrix_polynomial_consistency
from src.cli.jobs import build_components, close_all, filter_problem, mesh_for
from src.cli.registry import EXIT_ERROR, EXIT_OK, CommandHandler, CommandRegistry
from src.errors import GeofiltError, InvalidArgumentError, SizeLimitError
from src.krige import (
    ComponentModel,
    FemSpectralComponent,
    FilterProblem,
    filter,
    white_noise,
)
from src.models.config import ToolkitConfig
from src.models.jobs import GridSpec, JobConfig
from src.models.reports import CheckResult, ValidateReport
from src.oracle import dense_component, dense_filter
from src.spectral import precision_polynomial
from src.utils.logging import get_logger

logger = get_logger(__name__)

DEFAULT_SIZE = 10
MATVEC_TOLERANCE = 1e-6
MARKOV_TOLERANCE = 1e-6
FILTER_TOLERANCE = 1e-5
VALIDATION_FIT_TOLERANCE = 1e-10
VALIDATION_CG_TOL = 1e-8
MARKOV_DEGREE = 200


def _relative(a: np.ndarray, b: np.ndarray) -> float:
    scale = float(np.linalg.norm(b))
    return float(np.linalg.norm(a - b)) / (scale if scale > 0 else 1.0)


def _check(name: str, tolerance: float, compute: Callable[[], float]) -> CheckResult:
    try:
        error = compute()
    except GeofiltError as exc:
        logger.warning("validate_check_failed", check=name, error=str(exc))
        return CheckResult(
            name=name,
            passed=False,
            tolerance=tolerance,
            message=f"{type(exc).__name__}: {exc}",
        )
    return CheckResult(
        name=name, passed=error <= tolerance, error=error, tolerance=tolerance
    )


def validation_grid(job: JobConfig, size: int) -> GridSpec:
    """Square grid of ``size`` nodes per side with the job's spacings.

    Raises:
        InvalidArgumentError: If a raster-driven component cannot be resized
    """
    uses_rasters = any(
        spec.anisotropy is not None and spec.anisotropy.mode == "rasters"
        for spec in job.components
    )
    if uses_rasters and (job.grid.nx, job.grid.ny) != (size, size):
        raise InvalidArgumentError(
            "raster anisotropy cannot be resampled; pass --size equal to the job grid "
            f"({job.grid.nx}x{job.grid.ny} must be square)"
        )
    return GridSpec(nx=size, ny=size, dx=job.grid.dx, dy=job.grid.dy)


def component_checks(
    components: list[ComponentModel], n: int, max_nodes: int
) -> list[CheckResult]:
    """Matrix-free covariance and Markov consistency checks per component."""
    checks = []
    for k, component in enumerate(components):
        if not isinstance(component, FemSpectralComponent):
            continue
        v = white_noise(n, seed=0, stream=k)

        def matvec_error(
            c: FemSpectralComponent = component, v: np.ndarray = v
        ) -> float:
            dense = dense_component(c, n, max_nodes) @ v
            return _relative(c.apply(v), dense)

        name = f"matvec:{component.name}"
        checks.append(_check(name, MATVEC_TOLERANCE, matvec_error))

        if component.spectral.family != "markov":
            continue

        def markov_error(
            c: FemSpectralComponent = component, v: np.ndarray = v
        ) -> float:
            assert c.operator is not None
            p0 = precision_polynomial(c.spectral)
            _, q_sigma_v = matrix_polynomial_consistency(
                c.operator, p0, v, MARKOV_DEGREE
            )
            return _relative(q_sigma_v, v)

        name = f"markov:{component.name}"
        checks.append(_check(name, MARKOV_TOLERANCE, markov_error))
    return checks


@CommandRegistry.register
class ValidateCommand(CommandHandler):
    """Run oracle comparisons on a small instance of the job's models."""

    name = "validate"
    help = "compare matrix-free operators with dense oracles on a small grid"

    @classmethod
    def configure(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--config", required=True, help="JSON job file")
        parser.add_argument(
            "--size",
            type=int,
            default=DEFAULT_SIZE,
            help="nodes per side of the test grid",
        )

    @classmethod
    def run(cls, args: argparse.Namespace, config: ToolkitConfig) -> int:
        start_time = time.time()
        job = JobConfig.from_file(args.config)
        size = int(args.size)
        n = size * size
        if size < 2:
            raise InvalidArgumentError(f"--size must be at least 2, got {size}")
        if n > config.oracle.max_nodes:
            raise SizeLimitError(
                f"--size {size} gives {n} nodes, above the oracle guard of "
                f"{config.oracle.max_nodes}"
            )
        grid = validation_grid(job, size)
        mesh = mesh_for(grid)
        components = build_components(
            job,
            mesh,
            config,
            grid=grid,
            fit_tolerance=min(config.solver.fit_tolerance, VALIDATION_FIT_TOLERANCE),
        )
        try:
            checks = component_checks(components, n, config.oracle.max_nodes)
            tol = min(job.solver.tol or config.solver.tol, VALIDATION_CG_TOL)
            data = white_noise(n, seed=0, stream=len(components))
            base = filter_problem(job, data, components, config, tol=tol)
            problem = FilterProblem(
                data=data,
                signal=base.signal,
                noises=base.noises,
                tol=tol,
                max_iter=max(base.iteration_cap, 20 * n),
                jitter=base.jitter,
                jitter_scale=base.jitter_scale,
            )

            def filter_error() -> float:
                dense = dense_filter(problem, config.oracle.max_nodes)
                return _relative(filter(problem).estimates, dense)

            tolerance = max(FILTER_TOLERANCE, 10 * tol)
            checks.append(_check("filter", tolerance, filter_error))
        finally:
            close_all(components)

        report = ValidateReport(
            passed=all(c.passed for c in checks),
            size=size,
            nodes=n,
            checks=checks,
            wall_time_s=time.time() - start_time,
        )
        print(report.model_dump_json())
        return EXIT_OK if report.passed else EXIT_ERROR
