"""Shared fixtures."""

import json
from collections.abc import Callable
from pathlib import Path
from typing import Any

import numpy as np
import pytest

from src.fem import FemOperator, assemble
from src.geometry import TriMesh, constant_field, triangulate_grid

REPO_ROOT = Path(__file__).resolve().parents[1]


@pytest.fixture
def small_mesh() -> TriMesh:
    """5x5 unit grid."""
    return triangulate_grid(5, 5, 1.0, 1.0)


@pytest.fixture
def small_operator(small_mesh: TriMesh) -> FemOperator:
    """Isotropic unit-range operator on the 5x5 grid."""
    return assemble(small_mesh, constant_field(small_mesh, 0.0, 1.0, 1.0))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def toolkit_env(monkeypatch: pytest.MonkeyPatch) -> None:
    """Point the CLI at the repository config and keep logs quiet."""
    monkeypatch.setenv("GEOFILT_CONFIG_PATH", str(REPO_ROOT / "config.yaml"))
    monkeypatch.setenv("GEOFILT_LOG_LEVEL", "WARNING")


@pytest.fixture
def write_job(tmp_path: Path) -> Callable[[dict[str, Any]], Path]:
    """Write a JSON job file into the test directory."""

    def write(job: dict[str, Any], name: str = "job.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(job))
        return path

    return write
