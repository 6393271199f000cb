"""Single-line JSON run reports printed by the CLI."""

from typing import Literal

from pydantic import BaseModel, Field


class FilterReport(BaseModel):
    """Outcome of a filter run."""

    command: Literal["filter"] = "filter"
    status: Literal["converged", "not_converged"]
    iterations: int
    relative_residual: float
    tol: float
    degrees: dict[str, int | None] = Field(
        ..., description="Chebyshev degree per component"
    )
    jitter: float
    nodes: int
    threads: int
    wall_time_s: float
    output: str
    noise_output: str | None = None


class SimulateReport(BaseModel):
    """Outcome of a simulate run."""

    command: Literal["simulate"] = "simulate"
    seed: int
    outputs: list[str]
    degrees: dict[str, int | None]
    nodes: int
    threads: int
    wall_time_s: float


class VariogramReport(BaseModel):
    """Outcome of a variogram run."""

    command: Literal["variogram"] = "variogram"
    output: str
    lags: int
    tolerance: float
    pairs: int
    directional: bool
    wall_time_s: float


class CheckResult(BaseModel):
    """One oracle comparison."""

    name: str
    passed: bool
    error: float | None = Field(None, description="Relative error of the check")
    tolerance: float | None = None
    message: str | None = None


class ValidateReport(BaseModel):
    """Outcome of a validate run."""

    command: Literal["validate"] = "validate"
    passed: bool
    size: int
    nodes: int
    checks: list[CheckResult]
    wall_time_s: float
