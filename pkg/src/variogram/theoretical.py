"""Model semi-variograms of the covariance catalog."""

import numpy as np

from src.spectral import SpectralModel, covariance


def model_semivariogram(
    model: SpectralModel, r: np.ndarray | float
) -> np.ndarray | float:
    """Return gamma(r) = C0(0) - C0(r) for the unit-range model."""
    c0 = covariance(model, 0.0)
    values = c0 - np.asarray(covariance(model, r))
    return float(values) if np.ndim(r) == 0 else values
