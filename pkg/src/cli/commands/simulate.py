"""Unconditional simulation of every component of a job."""

import argparse
import time

import numpy as np

from src.cli.jobs import build_components, close_all, header_for, mesh_for
from src.cli.registry import EXIT_OK, CommandHandler, CommandRegistry
from src.errors import InvalidArgumentError
from src.krige import FemSpectralComponent, simulate
from src.models.config import ToolkitConfig
from src.models.jobs import JobConfig
from src.models.reports import SimulateReport
from src.raster import write_grid


@CommandRegistry.register
class SimulateCommand(CommandHandler):
    """Write truth, noise and noisy rasters drawn from the job's components."""

    name = "simulate"
    help = "simulate the signal and noise components of a job"

    @classmethod
    def configure(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--config", required=True, help="JSON job file")
        parser.add_argument(
            "--output-prefix", required=True, help="prefix of output rasters"
        )
        parser.add_argument(
            "--seed", type=int, help="generator seed (overrides the job)"
        )
        parser.add_argument("--degree", type=int, help="fixed Chebyshev degree")
        parser.add_argument("--threads", type=int, help="sparse product worker threads")

    @classmethod
    def run(cls, args: argparse.Namespace, config: ToolkitConfig) -> int:
        start_time = time.time()
        if args.threads:
            config.solver.threads = args.threads
        job = JobConfig.from_file(args.config)
        seed = args.seed if args.seed is not None else job.seed
        if seed is None or seed < 0:
            raise InvalidArgumentError(
                "simulate needs a non-negative seed (--seed or job 'seed')"
            )

        mesh = mesh_for(job.grid)
        components = build_components(
            job, mesh, config, with_sqrt=True, degree=args.degree
        )
        try:
            fields = [simulate(c, seed, stream=k) for k, c in enumerate(components)]
        finally:
            close_all(components)

        header = header_for(job.grid)
        prefix = str(args.output_prefix)
        outputs = [f"{prefix}.truth.grd"]
        outputs += [f"{prefix}.noise-{k}.grd" for k in range(1, len(fields))]
        outputs.append(f"{prefix}.noisy.grd")
        noisy = np.sum(fields, axis=0)
        for path, values in zip(outputs, [*fields, noisy], strict=True):
            write_grid(path, header, values)

        report = SimulateReport(
            seed=seed,
            outputs=outputs,
            degrees={
                c.name: c.sqrt_g_approx.degree
                if isinstance(c, FemSpectralComponent) and c.sqrt_g_approx
                else None
                for c in components
            },
            nodes=mesh.n_nodes,
            threads=config.solver.threads,
            wall_time_s=time.time() - start_time,
        )
        print(report.model_dump_json())
        return EXIT_OK
