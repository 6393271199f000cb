"""Configuration models and settings management."""

from pathlib import Path

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

# Load environment variables early
load_dotenv()


class LoggingConfig(BaseModel):
    """Logging configuration."""

    level: str = Field(default="INFO", description="Log level")
    format: str = Field(default="json", description="Log format (json or console)")

    @field_validator("format")
    @classmethod
    def check_format(cls, v: str) -> str:
        """Accept only the renderers setup_logging knows."""
        if v not in ("json", "console"):
            raise ValueError(f"log format must be 'json' or 'console', got '{v}'")
        return v


class SolverConfig(BaseModel):
    """Defaults of the Chebyshev filter and conjugate gradient solver."""

    tol: float = Field(
        default=1e-6, gt=0.0, description="Relative CG residual threshold"
    )
    max_iter_factor: float = Field(
        default=10.0, gt=0.0, description="Default iteration cap is factor * sqrt(n)"
    )
    degree: int = Field(default=256, ge=1, description="Initial Chebyshev degree")
    max_degree: int = Field(default=2048, ge=1, description="Degree doubling cap")
    fit_tolerance: float = Field(
        default=1e-6, gt=0.0, description="Uniform fit error relative to max g"
    )
    jitter_scale: float = Field(
        default=1e-6,
        ge=0.0,
        description="Ridge per unit of summed sills without nugget",
    )
    threads: int = Field(
        default=1, ge=1, description="Worker threads of the sparse product"
    )


class VariogramConfig(BaseModel):
    """Experimental variogram defaults."""

    max_pairs: int = Field(default=1_000_000, ge=2, description="Ordered pairs per lag")
    angular_tolerance_deg: float = Field(
        default=22.5, gt=0.0, le=90.0, description="Half-width of directional sectors"
    )


class OracleConfig(BaseModel):
    """Dense oracle limits."""

    max_nodes: int = Field(default=2000, ge=1, description="Largest n densified")


class ToolkitConfig(BaseModel):
    """Toolkit configuration."""

    logging: LoggingConfig = Field(default_factory=LoggingConfig)
    solver: SolverConfig = Field(default_factory=SolverConfig)
    variogram: VariogramConfig = Field(default_factory=VariogramConfig)
    oracle: OracleConfig = Field(default_factory=OracleConfig)

    @classmethod
    def from_yaml(cls, path: str | Path) -> "ToolkitConfig":
        """Load configuration from YAML file; a missing file yields the defaults."""
        if not Path(path).exists():
            return cls()
        with open(path) as f:
            data = yaml.safe_load(f) or {}
        return cls(**data)


class Settings(BaseSettings):
    """Environment settings."""

    model_config = SettingsConfigDict(
        env_prefix="GEOFILT_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",  # Ignore extra fields in .env
        env_ignore_empty=True,  # Ignore empty environment variables
    )

    # Environment variables that can override config
    config_path: str = "config.yaml"
    log_level: str | None = None
    log_format: str | None = None
    threads: int | None = None


def load_config(settings: Settings | None = None) -> ToolkitConfig:
    """Load config.yaml and apply environment overrides."""
    settings = settings or Settings()
    config = ToolkitConfig.from_yaml(settings.config_path)

    # Apply environment overrides
    if settings.log_level:
        config.logging.level = settings.log_level
    if settings.log_format:
        config.logging.format = settings.log_format
    if settings.threads:
        config.solver.threads = settings.threads
    return config
