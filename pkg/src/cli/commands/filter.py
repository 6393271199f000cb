"""Factorial kriging filter of a raster."""

import argparse
import time

from src.cli.jobs import (
    build_components,
    check_grid,
    close_all,
    filter_problem,
    header_for,
    mesh_for,
)
from src.cli.registry import (
    EXIT_NOT_CONVERGED,
    EXIT_OK,
    CommandHandler,
    CommandRegistry,
)
from src.errors import ConvergenceError
from src.krige import FemSpectralComponent, filter, noise_estimate
from src.models.config import ToolkitConfig
from src.models.jobs import JobConfig
from src.models.reports import FilterReport
from src.raster import read_grid, write_grid
from src.utils.logging import get_logger

logger = get_logger(__name__)

@CommandRegistry.register
class FilterCommand(CommandHandler):
    """Estimate the signal component of an input raster."""

    name = "filter"
    help = "estimate the signal component of a raster by matrix-free kriging"

    @classmethod
    def configure(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--config", required=True, help="JSON job file")
        parser.add_argument("--input", required=True, help="GRIDF64 observations")
        parser.add_argument("--output", required=True, help="GRIDF64 signal estimate")
        parser.add_argument("--noise-output", help="GRIDF64 input minus estimate")
        parser.add_argument("--tol", type=float, help="relative CG residual threshold")
        parser.add_argument("--degree", type=int, help="fixed Chebyshev degree")
        parser.add_argument("--threads", type=int, help="sparse product worker threads")

    @classmethod
    def run(cls, args: argparse.Namespace, config: ToolkitConfig) -> int:
        start_time = time.time()
        if args.threads:
            config.solver.threads = args.threads
        job = JobConfig.from_file(args.config)
        header, data = read_grid(args.input)
        check_grid(header, job.grid, f"input raster {args.input}")

        mesh = mesh_for(job.grid)
        components = build_components(job, mesh, config, degree=args.degree)
        try:
            problem = filter_problem(job, data, components, config, tol=args.tol)
            status = "converged"
            try:
                result = filter(problem)
                estimates, iterations = result.estimates, result.iterations
                residual = result.final_residual
            except ConvergenceError as exc:
                status = "not_converged"
                estimates, iterations = exc.estimates, exc.iterations
                residual = exc.residual_history[-1]
        finally:
            close_all(components)

        write_grid(args.output, header_for(job.grid), estimates)
        if args.noise_output:
            noise = noise_estimate(data, estimates)
            write_grid(args.noise_output, header_for(job.grid), noise)

        report = FilterReport(
            status=status,
            iterations=iterations,
            relative_residual=residual,
            tol=problem.tol,
            degrees={
                c.name: c.degree if isinstance(c, FemSpectralComponent) else None
                for c in components
            },
            jitter=problem.effective_jitter,
            nodes=problem.size,
            threads=config.solver.threads,
            wall_time_s=time.time() - start_time,
            output=str(args.output),
            noise_output=str(args.noise_output) if args.noise_output else None,
        )
        print(report.model_dump_json())
        return EXIT_OK if status == "converged" else EXIT_NOT_CONVERGED
