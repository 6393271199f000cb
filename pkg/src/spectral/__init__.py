"""Covariance catalog, spectral densities and the Hankel oracle."""

from .catalog import (
    covariance,
    g_of_lambda,
    matern_constant,
    matern_correlation,
    precision_polynomial,
    spectral_density,
    spectral_function,
    sqrt_spectral_function,
)
from .hankel import hankel_roundtrip
from .models import Family, SpectralModel, exponential, gaussian, markov, matern, nugget

__all__ = [
    "Family",
    "SpectralModel",
    "covariance",
    "exponential",
    "g_of_lambda",
    "gaussian",
    "hankel_roundtrip",
    "markov",
    "matern",
    "matern_constant",
    "matern_correlation",
    "nugget",
    "precision_polynomial",
    "spectral_density",
    "spectral_function",
    "sqrt_spectral_function",
]
