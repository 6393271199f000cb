"""Experimental semi-variograms of gridded data."""

import csv
import math
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from src.errors import InvalidArgumentError
from src.geometry import TriMesh
from src.utils.logging import get_logger, log_event

logger = get_logger(__name__)

DEFAULT_ANGULAR_TOLERANCE = math.radians(22.5)
DEFAULT_MAX_PAIRS = 1_000_000


@dataclass(frozen=True)
class Direction:
    """Angular sector of a directional variogram, both angles in radians."""

    angle: float
    tolerance: float = DEFAULT_ANGULAR_TOLERANCE

    def __post_init__(self) -> None:
        if not (0.0 < self.tolerance <= math.pi / 2):
            raise InvalidArgumentError(
                f"angular tolerance must lie in (0, pi/2], got {self.tolerance}"
            )

    def contains(self, dx: np.ndarray, dy: np.ndarray) -> np.ndarray:
        """Mask of separation vectors inside the sector; axial, so h and -h agree."""
        offset = np.mod(np.arctan2(dy, dx) - self.angle + math.pi / 2, math.pi)
        return np.abs(offset - math.pi / 2) <= self.tolerance


@dataclass(frozen=True)
class VariogramEstimate:
    """Semi-variance per lag; lags without pairs carry NaN."""

    lags: np.ndarray
    tolerance: float
    values: np.ndarray
    pair_counts: np.ndarray
    direction: Direction | None = None

    def to_csv(self, path: str | Path) -> None:
        """Write ``lag,gamma,npairs`` rows; missing values are left empty."""
        with open(path, "w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(["lag", "gamma", "npairs"])
            for lag, gamma, count in zip(
                self.lags, self.values, self.pair_counts, strict=True
            ):
                cell = "" if np.isnan(gamma) else repr(float(gamma))
                writer.writerow([repr(float(lag)), cell, int(count)])


def parse_lags(spec: str) -> np.ndarray:
    """Parse ``"start:stop:step"`` (stop included) or ``"r1,r2,..."``.

    Raises:
        InvalidArgumentError: On malformed text or a non-positive step
    """
    text = spec.strip()
    separator = ":" if ":" in text else ","
    try:
        parts = [float(p) for p in text.split(separator) if p.strip()]
    except ValueError as exc:
        raise InvalidArgumentError(f"cannot parse lags '{spec}': {exc}") from exc
    if separator == ",":
        return np.array(parts)
    if len(parts) != 3:
        raise InvalidArgumentError(f"expected start:stop:step, got '{spec}'")
    start, stop, step = parts
    if not step > 0:
        raise InvalidArgumentError(f"lag step must be positive, got {step}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(max(count, 0))


def _check_lags(lags: np.ndarray) -> np.ndarray:
    arr = np.asarray(lags, dtype=np.float64).ravel()
    if arr.size == 0:
        raise InvalidArgumentError("at least one lag is required")
    if not np.all(np.isfinite(arr)) or np.any(arr < 0):
        raise InvalidArgumentError("lags must be finite and non-negative")
    if np.any(np.diff(arr) <= 0):
        raise InvalidArgumentError("lags must be strictly increasing")
    return arr


def default_tolerance(lags: np.ndarray) -> float:
    """Half the smallest lag spacing, or half the lag when only one is given."""
    arr = _check_lags(lags)
    spacing = float(np.min(np.diff(arr))) if arr.size > 1 else float(arr[0])
    return 0.5 * spacing


def _grid_offsets(
    mesh: TriMesh, reach: float, direction: Direction | None
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Node offsets ``(di, dj)`` of one half-plane within ``reach``.

    Each unordered node pair is separated by exactly one of these offsets.
    """
    max_i = min(mesh.nx - 1, int(math.floor(reach / mesh.dx)) + 1)
    max_j = min(mesh.ny - 1, int(math.floor(reach / mesh.dy)) + 1)
    di, dj = np.meshgrid(
        np.arange(-max_i, max_i + 1), np.arange(max_j + 1), indexing="xy"
    )
    di, dj = di.ravel(), dj.ravel()
    half = (dj > 0) | ((dj == 0) & (di > 0))
    di, dj = di[half], dj[half]
    sx, sy = di * mesh.dx, dj * mesh.dy
    dist = np.hypot(sx, sy)
    keep = dist <= reach
    if direction is not None:
        keep &= direction.contains(sx, sy)
    return di[keep], dj[keep], dist[keep]


def _offset_sum(grid: np.ndarray, di: int, dj: int) -> float:
    """Sum of squared increments over every node pair at offset ``(di, dj)``."""
    ny, nx = grid.shape
    lo, hi = max(-di, 0), nx - max(di, 0)
    diff = grid[dj:, lo + di : hi + di] - grid[: ny - dj, lo:hi]
    return float(np.sum(diff * diff))


def _sampled_sum(
    z: np.ndarray,
    nx: int,
    di: np.ndarray,
    dj: np.ndarray,
    sizes: np.ndarray,
    picks: np.ndarray,
) -> float:
    """Sum of squared increments over selected pairs.

    Pairs are numbered offset by offset, row-major within each offset's
    overlap window, so ``picks`` addresses them without listing them.
    """
    ends = np.cumsum(sizes)
    owner = np.searchsorted(ends, picks, side="right")
    local = picks - (ends - sizes)[owner]
    a, b = di[owner], dj[owner]
    row, col = np.divmod(local, nx - np.abs(a))
    i0 = col + np.maximum(-a, 0)
    first = z[row * nx + i0]
    second = z[(row + b) * nx + i0 + a]
    return float(np.sum((second - first) ** 2))


def experimental_variogram(
    data: np.ndarray,
    mesh: TriMesh,
    lags: np.ndarray,
    eps: float | None = None,
    direction: Direction | None = None,
    max_pairs: int | None = DEFAULT_MAX_PAIRS,
    seed: int = 0,
) -> VariogramEstimate:
    """Average half squared increments over pairs within eps of each lag.

    Pairs are counted ordered, so every unordered pair contributes twice to
    both numerator and count. Pairs are visited one grid offset at a time, so
    memory stays proportional to the raster. When a lag holds more than
    ``max_pairs`` ordered pairs, a systematic subsample with a seeded random
    start is used and its size reported.

    Args:
        data: Values at the mesh nodes
        mesh: Grid the data live on
        lags: Strictly increasing target distances
        eps: Distance tolerance, default half the lag spacing
        direction: Optional angular sector
        max_pairs: Cap on ordered pairs per lag, None for no cap
        seed: Seed of the subsample start

    Returns:
        The variogram estimate

    Raises:
        InvalidArgumentError: On empty lags, bad eps or mis-sized data
    """
    start_time = time.time()
    lag_arr = _check_lags(lags)
    tol = default_tolerance(lag_arr) if eps is None else float(eps)
    if not tol > 0:
        raise InvalidArgumentError(f"eps must be positive, got {tol}")
    z = np.asarray(data, dtype=np.float64).ravel()
    if z.size != mesh.n_nodes:
        raise InvalidArgumentError(
            f"data has {z.size} values, mesh has {mesh.n_nodes} nodes"
        )
    if max_pairs is not None and max_pairs < 2:
        raise InvalidArgumentError(f"max_pairs must be at least 2, got {max_pairs}")

    grid = z.reshape(mesh.ny, mesh.nx)
    di, dj, dist = _grid_offsets(mesh, float(lag_arr[-1] + tol), direction)
    cap = None if max_pairs is None else max_pairs // 2

    values = np.full(lag_arr.size, np.nan)
    counts = np.zeros(lag_arr.size, dtype=np.int64)
    for k, lag in enumerate(lag_arr):
        band = (dist >= lag - tol) & (dist <= lag + tol)
        odi, odj = di[band], dj[band]
        sizes = (mesh.nx - np.abs(odi)).astype(np.int64) * (mesh.ny - odj)
        total = int(sizes.sum())
        if cap is not None and total > cap:
            rng = np.random.Generator(
                np.random.Philox(np.random.SeedSequence(seed, spawn_key=(k,)))
            )
            step = total / cap
            picks = np.floor((rng.random() + np.arange(cap)) * step)
            sq_sum = _sampled_sum(z, mesh.nx, odi, odj, sizes, picks.astype(np.int64))
            used = cap
        else:
            sq_sum = sum(
                _offset_sum(grid, int(a), int(b))
                for a, b in zip(odi, odj, strict=True)
            )
            used = total
        if used:
            # 2 * sum over unordered / (2 * 2 * count)
            values[k] = sq_sum / (2.0 * used)
        counts[k] = 2 * used

    log_event(
        logger,
        "variogram_computed",
        module="variogram",
        elapsed_ms=(time.time() - start_time) * 1000,
        lags=int(lag_arr.size),
        pairs=int(counts.sum()),
        directional=direction is not None,
    )
    return VariogramEstimate(
        lags=lag_arr,
        tolerance=tol,
        values=values,
        pair_counts=counts,
        direction=direction,
    )
