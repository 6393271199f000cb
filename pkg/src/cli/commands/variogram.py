"""Experimental variogram export."""

import argparse
import math
import time

from src.cli.registry import EXIT_OK, CommandHandler, CommandRegistry
from src.errors import InvalidArgumentError
from src.geometry import point_grid
from src.models.config import ToolkitConfig
from src.models.reports import VariogramReport
from src.raster import read_grid
from src.variogram import Direction, experimental_variogram, parse_lags


def parse_direction(text: str, default_tolerance_deg: float) -> Direction:
    """Parse ``"theta"`` or ``"theta,delta"`` given in degrees."""
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) not in (1, 2):
        raise InvalidArgumentError(
            f"expected 'theta' or 'theta,delta' in degrees, got '{text}'"
        )
    try:
        angle = float(parts[0])
        tolerance = abs(float(parts[1])) if len(parts) == 2 else default_tolerance_deg
    except ValueError as exc:
        raise InvalidArgumentError(f"cannot parse direction '{text}': {exc}") from exc
    return Direction(angle=math.radians(angle), tolerance=math.radians(tolerance))


@CommandRegistry.register
class VariogramCommand(CommandHandler):
    """Compute the experimental semi-variogram of a raster."""

    name = "variogram"
    help = "write the experimental semi-variogram of a raster as CSV"

    @classmethod
    def configure(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--input", required=True, help="GRIDF64 raster")
        parser.add_argument(
            "--lags", required=True, help="'start:stop:step' or 'r1,r2,...'"
        )
        parser.add_argument(
            "--eps", type=float, help="distance tolerance (default half spacing)"
        )
        parser.add_argument("--direction", help="sector 'theta,delta' in degrees")
        parser.add_argument("--max-pairs", type=int, help="ordered pairs per lag")
        parser.add_argument("--seed", type=int, default=0, help="subsampling seed")
        parser.add_argument("--output", required=True, help="CSV destination")

    @classmethod
    def run(cls, args: argparse.Namespace, config: ToolkitConfig) -> int:
        start_time = time.time()
        header, data = read_grid(args.input)
        mesh = point_grid(header.nx, header.ny, header.dx, header.dy)
        direction = (
            parse_direction(args.direction, config.variogram.angular_tolerance_deg)
            if args.direction
            else None
        )
        estimate = experimental_variogram(
            data,
            mesh,
            parse_lags(args.lags),
            eps=args.eps,
            direction=direction,
            max_pairs=args.max_pairs or config.variogram.max_pairs,
            seed=args.seed,
        )
        estimate.to_csv(args.output)

        report = VariogramReport(
            output=str(args.output),
            lags=int(estimate.lags.size),
            tolerance=estimate.tolerance,
            pairs=int(estimate.pair_counts.sum()),
            directional=direction is not None,
            wall_time_s=time.time() - start_time,
        )
        print(report.model_dump_json())
        return EXIT_OK
