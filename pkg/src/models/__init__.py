"""Data models for configuration, job files and run reports."""

from .config import (
    LoggingConfig,
    OracleConfig,
    Settings,
    SolverConfig,
    ToolkitConfig,
    VariogramConfig,
    load_config,
)
from .jobs import AnisotropySpec, ComponentSpec, GridSpec, JobConfig, SolverSpec
from .reports import (
    CheckResult,
    FilterReport,
    SimulateReport,
    ValidateReport,
    VariogramReport,
)

__all__ = [
    "AnisotropySpec",
    "CheckResult",
    "ComponentSpec",
    "FilterReport",
    "GridSpec",
    "JobConfig",
    "LoggingConfig",
    "OracleConfig",
    "Settings",
    "SimulateReport",
    "SolverConfig",
    "SolverSpec",
    "ToolkitConfig",
    "ValidateReport",
    "VariogramConfig",
    "VariogramReport",
    "load_config",
]
