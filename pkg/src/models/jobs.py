"""JSON job files describing a grid and its signal and noise components."""

import json
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.spectral import SpectralModel


class GridSpec(BaseModel):
    """Regular observation grid."""

    model_config = ConfigDict(extra="forbid")

    nx: int = Field(..., ge=2, description="Nodes along x")
    ny: int = Field(..., ge=2, description="Nodes along y")
    dx: float = Field(default=1.0, gt=0.0, description="Spacing along x")
    dy: float = Field(default=1.0, gt=0.0, description="Spacing along y")

    @property
    def size(self) -> int:
        return self.nx * self.ny


class AnisotropySpec(BaseModel):
    """Where the anisotropy angle (radians) and ranges of a component come from.

    ``constant`` uses theta/rho1/rho2 everywhere, ``rasters`` reads one
    GRIDF64 file per parameter, ``vortex`` and ``cross`` build the synthetic
    layouts from rho1/rho2 and an optional center.
    """

    model_config = ConfigDict(extra="forbid")

    mode: Literal["constant", "rasters", "vortex", "cross"]
    theta: float | None = Field(default=None, description="Angle in radians")
    rho1: float | None = Field(default=None, gt=0.0, description="First range")
    rho2: float | None = Field(default=None, gt=0.0, description="Second range")
    center: tuple[float, float] | None = Field(
        default=None, description="Layout center"
    )
    theta_path: Path | None = None
    rho1_path: Path | None = None
    rho2_path: Path | None = None

    @model_validator(mode="after")
    def check_mode_fields(self) -> "AnisotropySpec":
        """Require the fields each mode reads and reject the others."""
        paths = (self.theta_path, self.rho1_path, self.rho2_path)
        if self.mode == "rasters":
            if any(p is None for p in paths):
                raise ValueError(
                    "rasters mode needs theta_path, rho1_path and rho2_path"
                )
            scalars = (self.theta, self.rho1, self.rho2, self.center)
            if any(v is not None for v in scalars):
                raise ValueError("rasters mode takes only file paths")
            return self
        if any(p is not None for p in paths):
            raise ValueError(f"{self.mode} mode does not read rasters")
        if self.rho1 is None or self.rho2 is None:
            raise ValueError(f"{self.mode} mode needs rho1 and rho2")
        if self.mode == "constant":
            if self.theta is None:
                raise ValueError("constant mode needs theta")
            if self.center is not None:
                raise ValueError("constant mode has no center")
        elif self.theta is not None:
            raise ValueError(f"{self.mode} mode derives theta from the layout")
        return self

    def resolve(self, base_dir: Path) -> "AnisotropySpec":
        """Make raster paths absolute relative to ``base_dir``."""
        if self.mode != "rasters":
            return self
        update = {
            name: base_dir / path
            for name in ("theta_path", "rho1_path", "rho2_path")
            if (path := getattr(self, name)) is not None and not path.is_absolute()
        }
        return self.model_copy(update=update)


def _nugget_shortcut(value: Any) -> Any:
    if isinstance(value, dict) and "family" in value:
        return {"model": value}
    return value


class ComponentSpec(BaseModel):
    """One component: a catalog model and, except for nuggets, its anisotropy."""

    model_config = ConfigDict(extra="forbid")

    model: SpectralModel
    anisotropy: AnisotropySpec | None = None
    name: str | None = None

    @model_validator(mode="after")
    def check_anisotropy(self) -> "ComponentSpec":
        """Nuggets take no anisotropy, every other family needs one."""
        if self.model.is_nugget and self.anisotropy is not None:
            raise ValueError("nugget components take no anisotropy")
        if not self.model.is_nugget and self.anisotropy is None:
            raise ValueError(f"{self.model.family} components need an anisotropy")
        return self


class SolverSpec(BaseModel):
    """Per-job solver overrides; unset fields fall back to config.yaml."""

    model_config = ConfigDict(extra="forbid")

    tol: float | None = Field(default=None, gt=0.0)
    max_iter: int | None = Field(default=None, ge=1)
    degree: int | None = Field(default=None, ge=0)
    jitter: float | None = Field(default=None, ge=0.0)
    interval_end: float | None = Field(default=None, gt=0.0)


class JobConfig(BaseModel):
    """A filtering or simulation job."""

    model_config = ConfigDict(extra="forbid")

    grid: GridSpec
    signal: ComponentSpec
    noises: list[ComponentSpec] = Field(default_factory=list)
    solver: SolverSpec = Field(default_factory=SolverSpec)
    seed: int | None = Field(default=None, ge=0)

    @field_validator("signal", mode="before")
    @classmethod
    def expand_signal(cls, v: Any) -> Any:
        """Accept a bare model such as {"family": "nugget", "sill": 1}."""
        return _nugget_shortcut(v)

    @field_validator("noises", mode="before")
    @classmethod
    def expand_noises(cls, v: Any) -> Any:
        """Accept bare models, typically nugget shortcuts, in the noise list."""
        return [_nugget_shortcut(item) for item in v] if isinstance(v, list) else v

    @property
    def components(self) -> list[ComponentSpec]:
        return [self.signal, *self.noises]

    @classmethod
    def from_file(cls, path: str | Path) -> "JobConfig":
        """Load a JSON job; raster paths are resolved against the file's directory.

        Raises:
            FileNotFoundError: If the job or a referenced raster does not exist
        """
        job_path = Path(path)
        with open(job_path) as f:
            data = json.load(f)
        job = cls(**data)
        base_dir = job_path.resolve().parent

        def resolved(spec: ComponentSpec) -> ComponentSpec:
            if spec.anisotropy is None:
                return spec
            aniso = spec.anisotropy.resolve(base_dir)
            return spec.model_copy(update={"anisotropy": aniso})

        job = job.model_copy(
            update={
                "signal": resolved(job.signal),
                "noises": [resolved(n) for n in job.noises],
            }
        )
        for spec in job.components:
            aniso = spec.anisotropy
            if aniso is None or aniso.mode != "rasters":
                continue
            for raster in (aniso.theta_path, aniso.rho1_path, aniso.rho2_path):
                if raster is not None and not raster.exists():
                    raise FileNotFoundError(f"anisotropy raster not found: {raster}")
        return job
