"""Chebyshev approximation of scalar functions on [0, l]."""

import time
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev
from scipy import fft

from src.errors import InvalidArgumentError
from src.utils.logging import get_logger, log_event

logger = get_logger(__name__)

# Below this degree the direct cosine sum is as fast as the transform.
FFT_MIN_DEGREE = 64
MIN_VALIDATION_POINTS = 500


@dataclass(frozen=True)
class ChebyshevApprox:
    """Chebyshev expansion of g over [0, interval_end].

    The reconstruction is (c_0 / 2) T_0(t) + sum_{k >= 1} c_k T_k(t) with
    t = 2 x / l - 1.
    """

    interval_end: float
    degree: int
    coeffs: np.ndarray
    fit_error: float

    def evaluate(self, x: np.ndarray | float) -> np.ndarray:
        """Evaluate the expansion at points of [0, interval_end]."""
        t = 2.0 * np.asarray(x, dtype=np.float64) / self.interval_end - 1.0
        return np.asarray(chebyshev.chebval(t, halved(self.coeffs)))


def halved(coeffs: np.ndarray) -> np.ndarray:
    """Return the coefficients with c_0 halved, i.e. in numpy's Chebyshev basis."""
    out = np.array(coeffs, dtype=np.float64, copy=True)
    if out.size:
        out[0] *= 0.5
    return out


def chebyshev_nodes(interval_end: float, count: int) -> np.ndarray:
    """First-kind Chebyshev nodes mapped from [-1, 1] onto [0, interval_end]."""
    t = np.cos(np.pi * (np.arange(count) + 0.5) / count)
    return interval_end * (t + 1.0) / 2.0


def _sample(g: Callable[[np.ndarray], np.ndarray], x: np.ndarray) -> np.ndarray:
    values = np.asarray(g(x), dtype=np.float64)
    if values.shape != x.shape:
        values = np.broadcast_to(values, x.shape).astype(np.float64)
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        raise InvalidArgumentError(
            f"g is not finite at Chebyshev node {bad[0]} "
            f"(x={x[bad[0]]!r}, value={values[bad[0]]!r})"
        )
    return values


def chebyshev_fit(
    g: Callable[[np.ndarray], np.ndarray], interval_end: float, degree: int
) -> ChebyshevApprox:
    """Fit a degree-K Chebyshev expansion of ``g`` on [0, interval_end].

    Coefficients come from the discrete cosine construction on the K + 1
    first-kind nodes; the reported error is the maximum deviation on
    max(500, 2K) validation nodes.

    Args:
        g: Vectorized function to approximate
        interval_end: Right end l of the interval
        degree: Polynomial degree K

    Returns:
        The fitted approximation

    Raises:
        InvalidArgumentError: On a bad interval or degree, or a non-finite sample
    """
    if not (np.isfinite(interval_end) and interval_end > 0):
        raise InvalidArgumentError(
            f"interval end must be positive and finite, got {interval_end}"
        )
    if degree < 0:
        raise InvalidArgumentError(f"degree must be non-negative, got {degree}")

    count = degree + 1
    samples = _sample(g, chebyshev_nodes(interval_end, count))
    if degree >= FFT_MIN_DEGREE:
        coeffs = fft.dct(samples, type=2) / count
    else:
        k = np.arange(count)[:, None]
        j = np.arange(count)[None, :]
        coeffs = (2.0 / count) * (np.cos(np.pi * k * (j + 0.5) / count) @ samples)

    validation = chebyshev_nodes(interval_end, max(MIN_VALIDATION_POINTS, 2 * degree))
    approx = ChebyshevApprox(
        interval_end=float(interval_end), degree=degree, coeffs=coeffs, fit_error=0.0
    )
    error = float(np.max(np.abs(approx.evaluate(validation) - _sample(g, validation))))
    return ChebyshevApprox(
        interval_end=float(interval_end), degree=degree, coeffs=coeffs, fit_error=error
    )


def fit_auto(
    g: Callable[[np.ndarray], np.ndarray],
    interval_end: float,
    degree: int = 256,
    rel_tol: float = 1e-6,
    max_degree: int = 2048,
) -> ChebyshevApprox:
    """Fit with degree doubling until the uniform error is at most rel_tol * max g.

    The last fit is returned with a warning when ``max_degree`` is reached
    first.
    """
    if degree < 1 or max_degree < degree:
        raise InvalidArgumentError(
            f"need 1 <= degree <= max_degree, got degree={degree}, "
            f"max_degree={max_degree}"
        )
    start_time = time.time()
    probe = chebyshev_nodes(interval_end, max(MIN_VALIDATION_POINTS, 2 * degree))
    scale = float(np.max(np.abs(_sample(g, probe))))
    target = rel_tol * scale

    approx = chebyshev_fit(g, interval_end, degree)
    while approx.fit_error > target and approx.degree < max_degree:
        next_degree = min(2 * approx.degree, max_degree)
        logger.debug(
            "chebyshev_degree_doubled",
            degree=next_degree,
            fit_error=approx.fit_error,
            target=target,
        )
        approx = chebyshev_fit(g, interval_end, next_degree)

    if approx.fit_error > target:
        logger.warning(
            "chebyshev_tolerance_not_met",
            degree=approx.degree,
            fit_error=approx.fit_error,
            target=target,
        )
    log_event(
        logger,
        "chebyshev_fitted",
        module="chebfilter",
        elapsed_ms=(time.time() - start_time) * 1000,
        degree=approx.degree,
        interval_end=interval_end,
        fit_error=approx.fit_error,
    )
    return approx
