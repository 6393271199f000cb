"""Experimental and model semi-variograms."""

from .experimental import (
    DEFAULT_ANGULAR_TOLERANCE,
    DEFAULT_MAX_PAIRS,
    Direction,
    VariogramEstimate,
    default_tolerance,
    experimental_variogram,
    parse_lags,
)
from .theoretical import model_semivariogram

__all__ = [
    "DEFAULT_ANGULAR_TOLERANCE",
    "DEFAULT_MAX_PAIRS",
    "Direction",
    "VariogramEstimate",
    "default_tolerance",
    "experimental_variogram",
    "model_semivariogram",
    "parse_lags",
]
