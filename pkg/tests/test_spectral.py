"""Tests for the covariance catalog and the Hankel oracle."""

import numpy as np
import pytest
from pydantic import ValidationError

from src.errors import InvalidArgumentError, UnsupportedFamilyError
from src.spectral import (
    SpectralModel,
    covariance,
    exponential,
    g_of_lambda,
    gaussian,
    hankel_roundtrip,
    markov,
    matern,
    matern_constant,
    nugget,
    precision_polynomial,
    spectral_density,
    spectral_function,
    sqrt_spectral_function,
)

CONTINUOUS_MODELS = [
    matern(1.0, 0.5),
    matern(2.0, 1.0),
    matern(1.0, 3.0),
    exponential(1.5),
    gaussian(0.7),
    markov(1.0, 0.5, 2),
]


@pytest.mark.parametrize("model", CONTINUOUS_MODELS + [nugget(0.3)])
def test_covariance_at_origin_is_sill(model: SpectralModel) -> None:
    """Test that C0(0) equals the sill for every family."""
    assert covariance(model, 0.0) == pytest.approx(model.sill, rel=1e-12)


@pytest.mark.parametrize("model", CONTINUOUS_MODELS)
def test_covariance_decreases(model: SpectralModel) -> None:
    """Test that isotropic covariances decay with distance."""
    values = np.asarray(covariance(model, np.linspace(0.0, 12.0, 60)))
    assert np.all(np.diff(values) <= 1e-15)
    assert values[-1] < 0.1 * model.sill


def test_exponential_is_half_integer_matern() -> None:
    """Test that the exponential family is the nu = 1/2 Matern model."""
    r = np.linspace(0.0, 5.0, 11)
    xi = np.linspace(0.0, 30.0, 31)
    np.testing.assert_allclose(covariance(matern(1.0, 0.5), r), np.exp(-r), rtol=1e-10)
    np.testing.assert_allclose(
        spectral_density(matern(1.0, 0.5), xi),
        spectral_density(exponential(1.0), xi),
        rtol=1e-10,
    )


def test_closed_form_values() -> None:
    """Test a few hand-computed covariances."""
    assert covariance(exponential(2.0), 1.0) == pytest.approx(2.0 * np.exp(-1.0))
    assert covariance(gaussian(1.0), 2.0) == pytest.approx(np.exp(-4.0))
    # nu = 3/2: (1 + r) exp(-r)
    assert covariance(matern(1.0, 1.5), 2.0) == pytest.approx(3.0 * np.exp(-2.0))
    assert covariance(nugget(1.0), 0.5) == 0.0


def test_matern_constant_in_two_dimensions() -> None:
    """Test that the planar Matern constant reduces to 4 pi nu."""
    for nu in (0.5, 1.0, 3.0, 7.5):
        assert matern_constant(nu) == pytest.approx(4.0 * np.pi * nu, rel=1e-12)


def test_scalar_in_scalar_out() -> None:
    """Test that scalar queries return Python floats."""
    assert isinstance(covariance(matern(1.0, 1.0), 1.0), float)
    assert isinstance(spectral_density(gaussian(1.0), 1.0), float)
    assert isinstance(g_of_lambda(gaussian(1.0), 1.0), float)


def test_g_is_density_at_root_eigenvalue() -> None:
    """Test that g(lambda) = S(sqrt(lambda))."""
    model = matern(1.0, 2.0)
    assert g_of_lambda(model, 4.0) == spectral_density(model, 2.0)
    lam = np.array([0.0, 0.25, 9.0])
    np.testing.assert_allclose(
        spectral_function(model)(lam), spectral_density(model, np.sqrt(lam))
    )
    np.testing.assert_allclose(
        sqrt_spectral_function(model)(lam) ** 2, spectral_function(model)(lam)
    )


@pytest.mark.parametrize("model", CONTINUOUS_MODELS)
def test_density_positive_and_decreasing(model: SpectralModel) -> None:
    """Test that densities are positive and non-increasing in frequency."""
    values = np.asarray(spectral_density(model, np.linspace(0.0, 12.0, 60)))
    assert np.all(values > 0)
    assert np.all(np.diff(values) <= 0)


def test_negative_arguments_rejected() -> None:
    """Test that negative distances, frequencies and eigenvalues fail."""
    model = matern(1.0, 1.0)
    with pytest.raises(InvalidArgumentError):
        covariance(model, -1.0)
    with pytest.raises(InvalidArgumentError):
        spectral_density(model, np.array([1.0, -0.5]))
    with pytest.raises(InvalidArgumentError):
        g_of_lambda(model, -2.0)
    with pytest.raises(InvalidArgumentError):
        hankel_roundtrip(model, [-1.0])


def test_nugget_has_no_density() -> None:
    """Test that the flat nugget density is refused."""
    with pytest.raises(UnsupportedFamilyError):
        spectral_density(nugget(1.0), 1.0)
    with pytest.raises(UnsupportedFamilyError):
        hankel_roundtrip(nugget(1.0), [0.0])


def test_precision_polynomial_inverts_density() -> None:
    """Test that P0(lambda) g(lambda) = 1 for a Markov model."""
    model = markov(1.3, 0.5, 3)
    coeffs = precision_polynomial(model)
    assert coeffs.size == 4
    lam = np.array([0.0, 0.1, 1.0, 7.0, 40.0])
    g = spectral_function(model)
    product = np.polynomial.polynomial.polyval(lam, coeffs) * g(lam)
    np.testing.assert_allclose(product, 1.0, rtol=1e-12)


def test_precision_polynomial_needs_markov() -> None:
    """Test that non-Markov families have no polynomial precision."""
    with pytest.raises(UnsupportedFamilyError):
        precision_polynomial(matern(1.0, 1.0))


def test_markov_smoothness() -> None:
    """Test that the Markov smoothness is alpha - d/2."""
    assert markov(1.0, 1.0, 2).smoothness == 1.0
    assert markov(1.0, 1.0, 3).smoothness == 2.0


@pytest.mark.parametrize(
    "payload",
    [
        {"family": "matern", "sill": 1.0},
        {"family": "gaussian", "sill": 1.0, "nu": 2.0},
        {"family": "markov", "sill": 1.0, "kappa": 1.0},
        {"family": "exponential", "sill": 0.0},
        {"family": "exponential", "sill": 1.0, "range": 3.0},
        {"family": "cauchy", "sill": 1.0},
    ],
)
def test_invalid_models_rejected(payload: dict[str, object]) -> None:
    """Test model validation of family parameters."""
    with pytest.raises(ValidationError):
        SpectralModel.model_validate(payload)


@pytest.mark.parametrize(
    "model",
    [matern(1.0, 3.0), matern(1.0, 1.0), exponential(1.0), gaussian(1.0)],
)
def test_hankel_roundtrip_matches_catalog(model: SpectralModel) -> None:
    """Test that the inverse Hankel transform recovers C0 on [0, 5]."""
    radii = np.linspace(0.0, 5.0, 20)
    recovered = hankel_roundtrip(model, radii)
    expected = np.asarray(covariance(model, radii))
    np.testing.assert_allclose(recovered, expected, rtol=1e-3, atol=1e-6)


def test_hankel_origin_and_unit_radius() -> None:
    """Test the two anchor values of the transform."""
    assert hankel_roundtrip(matern(1.0, 3.0), [0.0])[0] == pytest.approx(1.0, abs=1e-3)
    value = hankel_roundtrip(exponential(1.0), [1.0])[0]
    assert value == pytest.approx(np.exp(-1.0), rel=1e-3)


def test_hankel_markov_matches_scaled_matern() -> None:
    """Test the Markov normalization by quadrature."""
    model = markov(1.0, 0.5, 2)
    radii = np.array([0.0, 1.0, 3.0])
    np.testing.assert_allclose(
        hankel_roundtrip(model, radii), covariance(model, radii), rtol=1e-3, atol=1e-6
    )
