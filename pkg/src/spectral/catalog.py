"""Closed-form covariances and spectral densities of the model catalog.

Densities use the angular-frequency convention

    C0(h) = (2 pi)^{-d} \\int S(xi) exp(i xi.h) dxi,

the normalization under which the eigen-expansion sum_k g(lambda_k) e_k e_k
over L2-orthonormal Laplacian eigenfunctions has marginal variance equal to
the sill. Eigenvalues are squared frequencies: g(lambda) = S(sqrt(lambda)).
"""

from collections.abc import Callable

import numpy as np
from numpy.polynomial import polynomial as P
from scipy import special

from src.errors import InvalidArgumentError, UnsupportedFamilyError
from src.spectral.models import SpectralModel

ArrayLike = np.ndarray | float


def _output(value: np.ndarray, like: ArrayLike) -> ArrayLike:
    return float(value) if np.ndim(like) == 0 else value


def _non_negative(values: ArrayLike, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if np.any(arr < 0) or np.any(np.isnan(arr)):
        raise InvalidArgumentError(f"{name} must be non-negative")
    return arr


def matern_correlation(nu: float, r: np.ndarray) -> np.ndarray:
    """Unit-sill, unit-range Matern correlation, continuous at r = 0."""
    out = np.ones_like(r, dtype=np.float64)
    positive = r > 0
    rp = r[positive]
    with np.errstate(under="ignore", over="ignore", invalid="ignore"):
        values = rp**nu * special.kv(nu, rp) / (2.0 ** (nu - 1.0) * special.gamma(nu))
    out[positive] = np.nan_to_num(values, nan=0.0)
    return out


def matern_constant(nu: float, dimension: int = 2) -> float:
    """Normalization c of S(xi) = c (1 + xi^2)^{-(nu + d/2)} for a unit sill."""
    return float(
        (4.0 * np.pi) ** (dimension / 2.0)
        * np.exp(special.gammaln(nu + dimension / 2.0) - special.gammaln(nu))
    )


def covariance(model: SpectralModel, r: ArrayLike) -> ArrayLike:
    """Evaluate the unit-range covariance C0 at distance(s) ``r``.

    Raises:
        InvalidArgumentError: If a distance is negative
    """
    dist = _non_negative(r, "distance")
    if model.family == "matern":
        assert model.nu is not None
        values = model.sill * matern_correlation(model.nu, np.atleast_1d(dist))
    elif model.family == "exponential":
        values = model.sill * np.exp(-np.atleast_1d(dist))
    elif model.family == "gaussian":
        values = model.sill * np.exp(-np.atleast_1d(dist) ** 2)
    elif model.family == "markov":
        assert model.kappa is not None and model.smoothness is not None
        values = model.sill * matern_correlation(
            model.smoothness, model.kappa * np.atleast_1d(dist)
        )
    else:
        values = np.where(np.atleast_1d(dist) == 0.0, model.sill, 0.0)
    return _output(values.reshape(np.shape(dist)), r)


def spectral_density(model: SpectralModel, xi: ArrayLike) -> ArrayLike:
    """Evaluate the radial spectral density S at frequency magnitude(s) ``xi``.

    Raises:
        InvalidArgumentError: If a frequency is negative
        UnsupportedFamilyError: For the nugget family, whose density is flat
    """
    freq = _non_negative(xi, "frequency")
    d = model.dimension
    sq = freq**2
    if model.family in ("matern", "exponential"):
        nu = model.smoothness
        assert nu is not None
        values = model.sill * matern_constant(nu, d) * (1.0 + sq) ** (-(nu + d / 2.0))
    elif model.family == "gaussian":
        values = model.sill * np.pi ** (d / 2.0) * np.exp(-sq / 4.0)
    elif model.family == "markov":
        nu = model.smoothness
        assert nu is not None and model.kappa is not None and model.alpha is not None
        scale = model.sill * matern_constant(nu, d) * model.kappa ** (2.0 * nu)
        values = scale * (model.kappa**2 + sq) ** (-float(model.alpha))
    else:
        raise UnsupportedFamilyError(
            "the nugget family has no integrable spectral density"
        )
    return _output(np.asarray(values, dtype=np.float64), xi)


def g_of_lambda(model: SpectralModel, lam: ArrayLike) -> ArrayLike:
    """Spectral density as a function of a Laplacian eigenvalue: S(sqrt(lambda)).

    Raises:
        InvalidArgumentError: If an eigenvalue is negative
    """
    eig = _non_negative(lam, "eigenvalue")
    xi = np.sqrt(eig)
    return spectral_density(model, xi if np.ndim(lam) else float(xi))


def spectral_function(model: SpectralModel) -> Callable[[np.ndarray], np.ndarray]:
    """Vectorized g for Chebyshev fitting."""

    def g(lam: np.ndarray) -> np.ndarray:
        return np.asarray(g_of_lambda(model, np.asarray(lam, dtype=np.float64)))

    return g


def sqrt_spectral_function(model: SpectralModel) -> Callable[[np.ndarray], np.ndarray]:
    """Vectorized sqrt(g), the filter used for simulation."""
    g = spectral_function(model)

    def sqrt_g(lam: np.ndarray) -> np.ndarray:
        return np.sqrt(g(lam))

    return sqrt_g


def precision_polynomial(model: SpectralModel) -> np.ndarray:
    """Power-basis coefficients (ascending) of P0 = 1/g for the Markov family.

    Raises:
        UnsupportedFamilyError: If the model is not a Markov model
    """
    if model.family != "markov":
        raise UnsupportedFamilyError(
            f"only markov models have a polynomial precision, got {model.family}"
        )
    assert model.kappa is not None and model.alpha is not None
    nu = model.smoothness
    assert nu is not None
    constant = matern_constant(nu, model.dimension)
    scale = model.sill * constant * model.kappa ** (2.0 * nu)
    return np.asarray(P.polypow([model.kappa**2, 1.0], model.alpha)) / scale
