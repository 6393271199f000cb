"""Numerical inverse Hankel transform, used to validate the catalog constants.

In two dimensions the inverse transform of a radial density reads

    C0(r) = 1/(2 pi) \\int_0^inf S(xi) J0(r xi) xi dxi.

For r > 0 the integrand oscillates, so it is integrated piecewise between
consecutive zeros of J0 and the resulting alternating partial sums are
accelerated by repeated averaging.
"""

import time
import warnings
from collections.abc import Callable, Sequence

import numpy as np
from scipy import integrate, special

from src.errors import (
    InvalidArgumentError,
    NumericalFailureError,
    UnsupportedFamilyError,
)
from src.spectral.catalog import spectral_density
from src.spectral.models import SpectralModel
from src.utils.logging import get_logger, log_event

logger = get_logger(__name__)

BLOCK = 64
MAX_INTERVALS = 4096
ACCEL_TERMS = 24


def _accelerate(partial: np.ndarray) -> float:
    """Collapse alternating partial sums by repeated pairwise averaging."""
    seq = partial.copy()
    while seq.size > 1:
        seq = 0.5 * (seq[1:] + seq[:-1])
    return float(seq[0])


def _quad(func: Callable[[float], float], a: float, b: float) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        value, _ = integrate.quad(
            func, a, b, limit=200, epsabs=1e-13, epsrel=1e-11
        )
    return float(value)


def _at_radius(model: SpectralModel, r: float, scale: float, tol: float) -> float:
    def integrand(xi: float) -> float:
        return float(spectral_density(model, xi)) * float(special.j0(r * xi)) * xi

    zeros = special.jn_zeros(0, MAX_INTERVALS) / r
    edges = np.concatenate([[0.0], zeros])
    partial = np.empty(MAX_INTERVALS)
    total = 0.0
    previous: float | None = None
    for k in range(MAX_INTERVALS):
        total += _quad(integrand, edges[k], edges[k + 1])
        partial[k] = total
        if (k + 1) % BLOCK or k + 1 < ACCEL_TERMS + 1:
            continue
        estimate = _accelerate(partial[k + 1 - ACCEL_TERMS : k + 1])
        if previous is not None and abs(estimate - previous) <= tol * scale:
            return estimate
        previous = estimate
    raise NumericalFailureError(
        f"Hankel quadrature did not converge at r={r}",
        diagnostics={
            "radius": r,
            "intervals": MAX_INTERVALS,
            "last_estimate": previous,
            "last_partial_sum": total,
        },
    )


def hankel_roundtrip(
    model: SpectralModel, radii: Sequence[float] | np.ndarray, tol: float = 1e-9
) -> np.ndarray:
    """Recover covariance values from the spectral density by quadrature.

    Args:
        model: Catalog model with an integrable density
        radii: Non-negative distances
        tol: Convergence tolerance relative to the integral at r = 0

    Returns:
        Covariance values, one per radius

    Raises:
        UnsupportedFamilyError: For the nugget family
        InvalidArgumentError: If a radius is negative or NaN
        NumericalFailureError: If the oscillatory tail does not settle
    """
    if model.is_nugget:
        raise UnsupportedFamilyError("the nugget family has no Hankel representation")
    start_time = time.time()
    r = np.asarray(radii, dtype=np.float64).ravel()
    if np.any(r < 0) or np.any(np.isnan(r)):
        raise InvalidArgumentError("radii must be non-negative")

    try:
        origin = _quad(lambda xi: float(spectral_density(model, xi)) * xi, 0.0, np.inf)
    except integrate.IntegrationWarning as exc:
        raise NumericalFailureError(
            "Hankel quadrature failed at r=0",
            diagnostics={"radius": 0.0, "reason": str(exc)},
        ) from exc

    values = np.empty_like(r)
    for i, radius in enumerate(r):
        if radius == 0.0:
            values[i] = origin
            continue
        try:
            values[i] = _at_radius(model, float(radius), origin, tol)
        except integrate.IntegrationWarning as exc:
            raise NumericalFailureError(
                f"Hankel quadrature failed at r={radius}",
                diagnostics={"radius": float(radius), "reason": str(exc)},
            ) from exc

    log_event(
        logger,
        "hankel_roundtrip_done",
        module="spectral",
        elapsed_ms=(time.time() - start_time) * 1000,
        family=model.family,
        radii=int(r.size),
    )
    return values / (2.0 * np.pi)
