"""Tests for the geofilt command line."""

import csv
import json
from collections.abc import Callable
from pathlib import Path
from typing import Any

import numpy as np
import pytest

from src.cli import EXIT_ERROR, EXIT_NOT_CONVERGED, EXIT_OK
from src.main import main
from src.raster import GridHeader, read_grid, write_grid

pytestmark = pytest.mark.usefixtures("toolkit_env")

WriteJob = Callable[..., Path]

CONSTANT = {"mode": "constant", "theta": 0.0, "rho1": 2.0, "rho2": 1.0}
MATERN = {"family": "matern", "sill": 1.0, "nu": 1.0}
NUGGET = {"family": "nugget", "sill": 1.0}


def _report(capsys: pytest.CaptureFixture[str]) -> dict[str, Any]:
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 1
    report: dict[str, Any] = json.loads(lines[0])
    return report


def _raster(path: Path, nx: int, ny: int, values: np.ndarray) -> Path:
    write_grid(path, GridHeader(nx=nx, ny=ny, dx=1.0, dy=1.0), values)
    return path


def _filter_args(job: Path, source: Path, output: Path) -> list[str]:
    args = ["filter", "--config", str(job), "--input", str(source)]
    return [*args, "--output", str(output)]


def test_signal_only_filter_reproduces_input(
    tmp_path: Path, write_job: WriteJob, capsys: pytest.CaptureFixture[str]
) -> None:
    """Test that a single component without jitter returns the data."""
    job = write_job(
        {
            "grid": {"nx": 6, "ny": 6},
            "signal": {
                "model": {"family": "exponential", "sill": 1.0},
                "anisotropy": CONSTANT,
            },
            "solver": {"jitter": 0.0, "tol": 1e-10, "max_iter": 500},
        }
    )
    data = np.sin(np.arange(36.0))
    source = _raster(tmp_path / "in.grd", 6, 6, data)
    output = tmp_path / "out.grd"

    code = main(_filter_args(job, source, output))

    assert code == EXIT_OK
    report = _report(capsys)
    assert report["command"] == "filter"
    assert report["status"] == "converged"
    assert report["nodes"] == 36
    assert report["jitter"] == 0.0
    assert isinstance(report["degrees"]["signal"], int)
    _, estimate = read_grid(output)
    np.testing.assert_allclose(estimate, data, atol=1e-6)


def test_equal_nuggets_halve_the_input(
    tmp_path: Path, write_job: WriteJob, capsys: pytest.CaptureFixture[str]
) -> None:
    """Test the nugget pair estimate and the noise output."""
    job = write_job(
        {
            "grid": {"nx": 5, "ny": 4},
            "signal": {"family": "nugget", "sill": 1.0},
            "noises": [{"family": "nugget", "sill": 1.0}],
        }
    )
    data = np.linspace(-2.0, 2.0, 20)
    source = _raster(tmp_path / "in.grd", 5, 4, data)
    output = tmp_path / "signal.grd"
    noise = tmp_path / "noise.grd"

    code = main(
        [
            "filter",
            "--config",
            str(job),
            "--input",
            str(source),
            "--output",
            str(output),
            "--noise-output",
            str(noise),
        ]
    )

    assert code == EXIT_OK
    report = _report(capsys)
    assert report["status"] == "converged"
    assert isinstance(report["relative_residual"], float)
    assert report["relative_residual"] <= report["tol"]
    assert report["degrees"] == {"signal": None, "noise-1": None}
    assert report["noise_output"] == str(noise)
    _, estimate = read_grid(output)
    _, residual = read_grid(noise)
    np.testing.assert_allclose(estimate, 0.5 * data, atol=1e-12)
    np.testing.assert_array_equal(residual, data - estimate)


def test_non_convergence_exits_two_and_writes_output(
    tmp_path: Path, write_job: WriteJob, capsys: pytest.CaptureFixture[str]
) -> None:
    """Test that hitting the iteration cap still writes the last iterate."""
    job = write_job(
        {
            "grid": {"nx": 8, "ny": 8},
            "signal": {
                "model": {"family": "matern", "sill": 1.0, "nu": 1.0},
                "anisotropy": CONSTANT,
            },
            "noises": [{"family": "nugget", "sill": 0.1}],
            "solver": {"tol": 1e-12, "max_iter": 1},
        }
    )
    source = _raster(tmp_path / "in.grd", 8, 8, np.cos(np.arange(64.0)))
    output = tmp_path / "out.grd"

    code = main(_filter_args(job, source, output))

    assert code == EXIT_NOT_CONVERGED
    report = _report(capsys)
    assert report["status"] == "not_converged"
    assert report["iterations"] == 1
    assert report["relative_residual"] > 1e-12
    _, estimate = read_grid(output)
    assert np.all(np.isfinite(estimate))


def test_filter_rejects_mismatched_raster(
    tmp_path: Path, write_job: WriteJob, capsys: pytest.CaptureFixture[str]
) -> None:
    """Test that an input raster of the wrong size is an error."""
    job = write_job({"grid": {"nx": 4, "ny": 4}, "signal": NUGGET})
    source = _raster(tmp_path / "in.grd", 3, 3, np.zeros(9))
    output = tmp_path / "out.grd"

    code = main(_filter_args(job, source, output))

    assert code == EXIT_ERROR
    assert capsys.readouterr().out == ""
    assert not output.exists()


def test_filter_rejects_invalid_job(
    tmp_path: Path, write_job: WriteJob, capsys: pytest.CaptureFixture[str]
) -> None:
    """Test that a job failing validation exits with status 1."""
    job = write_job({"grid": {"nx": 4, "ny": 4}, "signal": {"family": "matern"}})
    source = _raster(tmp_path / "in.grd", 4, 4, np.zeros(16))

    code = main(_filter_args(job, source, tmp_path / "out.grd"))

    assert code == EXIT_ERROR
    assert "geofilt filter" in capsys.readouterr().err


def test_invalid_toolkit_config(
    tmp_path: Path, monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]
) -> None:
    """Test that a bad config.yaml stops before any command runs."""
    path = tmp_path / "config.yaml"
    path.write_text("solver:\n  tol: -1\n")
    monkeypatch.setenv("GEOFILT_CONFIG_PATH", str(path))

    code = main(["variogram", "--input", "x.grd", "--lags", "1", "--output", "x.csv"])

    assert code == EXIT_ERROR
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "invalid configuration" in captured.err


def test_unknown_command_is_usage_error() -> None:
    """Test that argparse rejects unknown commands."""
    with pytest.raises(SystemExit) as excinfo:
        main(["smooth"])
    assert excinfo.value.code == 2


SIMULATE_JOB: dict[str, Any] = {
    "grid": {"nx": 10, "ny": 8},
    "signal": {"model": MATERN, "anisotropy": CONSTANT},
    "noises": [{"family": "nugget", "sill": 0.1}],
    "seed": 5,
}


def _simulate(prefix: Path, job: Path, *extra: str) -> int:
    args = ["simulate", "--config", str(job), "--output-prefix", str(prefix)]
    return main([*args, "--degree", "64", *extra])


def test_simulate_writes_components(
    tmp_path: Path, write_job: WriteJob, capsys: pytest.CaptureFixture[str]
) -> None:
    """Test the output files and that the noisy raster sums the components."""
    prefix = tmp_path / "run"

    assert _simulate(prefix, write_job(SIMULATE_JOB)) == 0

    report = _report(capsys)
    assert report["seed"] == 5
    assert report["outputs"] == [
        f"{prefix}.truth.grd",
        f"{prefix}.noise-1.grd",
        f"{prefix}.noisy.grd",
    ]
    assert report["degrees"] == {"signal": 64, "noise-1": None}
    _, truth = read_grid(f"{prefix}.truth.grd")
    _, noise = read_grid(f"{prefix}.noise-1.grd")
    header, noisy = read_grid(f"{prefix}.noisy.grd")
    assert (header.nx, header.ny) == (10, 8)
    np.testing.assert_array_equal(noisy, truth + noise)


def test_simulate_is_reproducible_across_threads(
    tmp_path: Path, write_job: WriteJob, capsys: pytest.CaptureFixture[str]
) -> None:
    """Test byte-identical rasters for one seed and any thread count."""
    job = write_job(SIMULATE_JOB)
    assert _simulate(tmp_path / "a", job, "--threads", "1") == 0
    assert _simulate(tmp_path / "b", job, "--threads", "4") == 0
    assert _simulate(tmp_path / "c", job, "--seed", "6") == 0
    capsys.readouterr()

    for suffix in ("truth", "noise-1", "noisy"):
        a = (tmp_path / f"a.{suffix}.grd").read_bytes()
        assert a == (tmp_path / f"b.{suffix}.grd").read_bytes()
        assert a != (tmp_path / f"c.{suffix}.grd").read_bytes()


def test_simulate_needs_seed(
    tmp_path: Path, write_job: WriteJob, capsys: pytest.CaptureFixture[str]
) -> None:
    """Test that a run without any seed is refused."""
    job = write_job({k: v for k, v in SIMULATE_JOB.items() if k != "seed"})

    assert _simulate(tmp_path / "run", job) == 1
    assert capsys.readouterr().out == ""
    assert not (tmp_path / "run.truth.grd").exists()


def test_variogram_command(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    """Test the CSV and report for two nodes one unit apart."""
    source = _raster(tmp_path / "in.grd", 2, 1, np.array([0.0, 2.0]))
    output = tmp_path / "gamma.csv"

    code = main(
        ["variogram", "--input", str(source), "--lags", "1", "--output", str(output)]
    )

    assert code == EXIT_OK
    report = _report(capsys)
    assert report["lags"] == 1
    assert report["pairs"] == 2
    assert report["tolerance"] == 0.5
    assert report["directional"] is False
    with open(output, newline="") as f:
        rows = list(csv.reader(f))
    assert rows == [["lag", "gamma", "npairs"], ["1.0", "2.0", "2"]]


@pytest.mark.parametrize(("direction", "pairs"), [("0,10", 2), ("90", 0)])
def test_variogram_direction(
    tmp_path: Path,
    capsys: pytest.CaptureFixture[str],
    direction: str,
    pairs: int,
) -> None:
    """Test directional sectors given in degrees."""
    source = _raster(tmp_path / "in.grd", 2, 1, np.array([0.0, 2.0]))
    output = tmp_path / "gamma.csv"

    code = main(
        [
            "variogram",
            "--input",
            str(source),
            "--lags",
            "1",
            "--direction",
            direction,
            "--output",
            str(output),
        ]
    )

    assert code == EXIT_OK
    report = _report(capsys)
    assert report["directional"] is True
    assert report["pairs"] == pairs


def test_variogram_bad_direction(tmp_path: Path) -> None:
    """Test that an unparsable sector is an error."""
    source = _raster(tmp_path / "in.grd", 2, 1, np.array([0.0, 2.0]))
    args = ["variogram", "--input", str(source), "--lags", "1", "--output", "g.csv"]
    assert main([*args, "--direction", "east"]) == 1


@pytest.mark.parametrize(
    ("signal", "checks"),
    [
        (
            {"model": MATERN, "anisotropy": CONSTANT},
            ["matvec:signal", "filter"],
        ),
        (
            {
                "model": {"family": "markov", "sill": 1.0, "kappa": 1.0, "alpha": 2},
                "anisotropy": CONSTANT,
            },
            ["matvec:signal", "markov:signal", "filter"],
        ),
    ],
)
def test_validate_passes(
    signal: dict[str, Any],
    checks: list[str],
    write_job: WriteJob,
    capsys: pytest.CaptureFixture[str],
) -> None:
    """Test that the oracle checks pass on a small grid."""
    job = write_job(
        {
            "grid": {"nx": 50, "ny": 50},
            "signal": signal,
            "noises": [{"family": "nugget", "sill": 0.2}],
        }
    )

    code = main(["validate", "--config", str(job)])

    report = _report(capsys)
    assert code == EXIT_OK, report
    assert report["passed"] is True
    assert report["nodes"] == 100
    assert [c["name"] for c in report["checks"]] == checks
    assert all(c["error"] <= c["tolerance"] for c in report["checks"])


def test_validate_reports_interval_too_small(
    write_job: WriteJob, capsys: pytest.CaptureFixture[str]
) -> None:
    """Test that an interval below the spectrum fails the run."""
    job = write_job(
        {
            "grid": {"nx": 10, "ny": 10},
            "signal": {
                "model": {"family": "matern", "sill": 1.0, "nu": 1.0},
                "anisotropy": CONSTANT,
            },
            "solver": {"interval_end": 0.01},
        }
    )

    assert main(["validate", "--config", str(job)]) == 1
    report = _report(capsys)
    assert report["passed"] is False
    for check in report["checks"]:
        assert check["passed"] is False
        assert check["message"].startswith("PreconditionError")


def test_validate_size_guard(write_job: WriteJob) -> None:
    """Test that validation grids above the oracle guard are refused."""
    job = write_job({"grid": {"nx": 4, "ny": 4}, "signal": NUGGET})
    assert main(["validate", "--config", str(job), "--size", "50"]) == 1
