"""Tests for anisotropy fields and metric tensors."""

import numpy as np
import pytest

from src.errors import InvalidArgumentError
from src.geometry import (
    AnisotropyField,
    constant_field,
    cross_field,
    interpolate_to_centroids,
    metric_at,
    triangulate_grid,
    vortex_field,
)


def test_metric_axis_aligned() -> None:
    """Test that theta = 0 gives diag(rho1^2, rho2^2) and h = 1/(rho1 rho2)."""
    sample = metric_at(0.0, 3.0, 0.5)
    np.testing.assert_allclose(sample.H[0], [[9.0, 0.0], [0.0, 0.25]])
    assert sample.h[0] == pytest.approx(1.0 / 1.5)


def test_metric_is_symmetric_positive_definite() -> None:
    """Test SPD metrics and det(H) = 1/h^2 for random parameters."""
    rng = np.random.default_rng(3)
    theta = rng.uniform(-np.pi, np.pi, 50)
    rho1 = rng.uniform(0.1, 10.0, 50)
    rho2 = rng.uniform(0.1, 10.0, 50)
    sample = metric_at(theta, rho1, rho2)
    np.testing.assert_array_equal(sample.H[:, 0, 1], sample.H[:, 1, 0])
    assert np.all(np.linalg.eigvalsh(sample.H) > 0)
    np.testing.assert_allclose(np.linalg.det(sample.H), 1.0 / sample.h**2, rtol=1e-10)


def test_metric_rotation_maps_first_axis() -> None:
    """Test that the rotated first axis is stretched by rho1 squared."""
    theta = np.pi / 6
    sample = metric_at(theta, 4.0, 1.0)
    axis = np.array([np.cos(theta), np.sin(theta)])
    np.testing.assert_allclose(sample.H[0] @ axis, 16.0 * axis, atol=1e-12)


def test_metric_half_turn_invariance() -> None:
    """Test that theta and theta + pi describe the same ellipse."""
    a = metric_at(0.3, 2.0, 1.0)
    b = metric_at(0.3 + np.pi, 2.0, 1.0)
    np.testing.assert_allclose(a.H, b.H, atol=1e-12)


@pytest.mark.parametrize(("rho1", "rho2"), [(0.0, 1.0), (1.0, -1.0)])
def test_metric_rejects_bad_ranges(rho1: float, rho2: float) -> None:
    """Test that non-positive ranges are rejected."""
    with pytest.raises(InvalidArgumentError):
        metric_at(0.0, rho1, rho2)


def test_field_shape_mismatch() -> None:
    """Test that field arrays must agree in length."""
    with pytest.raises(InvalidArgumentError):
        AnisotropyField(theta=np.zeros(4), rho1=np.ones(4), rho2=np.ones(3))


def test_field_must_match_mesh() -> None:
    """Test that a field sized for another mesh is rejected."""
    mesh = triangulate_grid(3, 3, 1.0, 1.0)
    field = constant_field(triangulate_grid(4, 4, 1.0, 1.0), 0.0, 1.0, 1.0)
    with pytest.raises(InvalidArgumentError):
        interpolate_to_centroids(field, mesh)


def test_centroid_angles_average_on_doubled_circle() -> None:
    """Test that angles near +pi/2 and -pi/2 average to the vertical axis."""
    mesh = triangulate_grid(2, 2, 1.0, 1.0)
    theta = np.array([np.pi / 2 - 0.01, -np.pi / 2 + 0.01, np.pi / 2, -np.pi / 2])
    field = AnisotropyField(theta=theta, rho1=np.full(4, 2.0), rho2=np.ones(4))
    theta_c, rho1_c, _ = interpolate_to_centroids(field, mesh)
    np.testing.assert_allclose(np.abs(np.cos(theta_c)), 0.0, atol=0.01)
    np.testing.assert_allclose(rho1_c, 2.0)


def test_vortex_field_is_tangential() -> None:
    """Test that the vortex first axis is orthogonal to the radius."""
    mesh = triangulate_grid(11, 11, 1.0, 1.0)
    field = vortex_field(mesh, 5.0, 1.0)
    offsets = mesh.nodes - np.array([5.0, 5.0])
    axis = np.column_stack([np.cos(field.theta), np.sin(field.theta)])
    np.testing.assert_allclose(np.sum(offsets * axis, axis=1), 0.0, atol=1e-9)


def test_cross_field_uses_diagonals() -> None:
    """Test that the cross layout only takes the two diagonal directions."""
    mesh = triangulate_grid(9, 9, 1.0, 1.0)
    field = cross_field(mesh, 3.0, 1.0)
    assert set(np.round(field.theta, 12)) == {
        round(np.pi / 4, 12),
        round(-np.pi / 4, 12),
    }
    upper_right = mesh.node_index(8, 8)
    lower_right = mesh.node_index(8, 0)
    assert field.theta[upper_right] == pytest.approx(np.pi / 4)
    assert field.theta[lower_right] == pytest.approx(-np.pi / 4)
