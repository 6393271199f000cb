"""Tests for FEM assembly and spectral bounds."""

import numpy as np
import pytest
from scipy import sparse

from src.errors import AssemblyError, InvalidArgumentError
from src.fem import (
    FemOperator,
    assemble,
    assemble_weak_forms,
    eig_upper_bound,
    frobenius_bound,
    gershgorin_bound,
)
from src.geometry import (
    AnisotropyField,
    constant_field,
    point_grid,
    triangulate_grid,
    vortex_field,
)

UNIT_SQUARE_STIFFNESS = np.array(
    [
        [1.0, -0.5, -0.5, 0.0],
        [-0.5, 1.0, 0.0, -0.5],
        [-0.5, 0.0, 1.0, -0.5],
        [0.0, -0.5, -0.5, 1.0],
    ]
)


def test_unit_square_weak_forms() -> None:
    """Test the 2x2 stiffness and lumped masses against hand values."""
    mesh = triangulate_grid(2, 2, 1.0, 1.0)
    lumped, stiffness = assemble_weak_forms(mesh, constant_field(mesh, 0.0, 1.0, 1.0))
    np.testing.assert_allclose(lumped, [1 / 3, 1 / 6, 1 / 6, 1 / 3])
    np.testing.assert_allclose(stiffness.toarray(), UNIT_SQUARE_STIFFNESS, atol=1e-15)


def test_normalized_stiffness_is_scaled() -> None:
    """Test that S equals C^{-1/2} K C^{-1/2}."""
    mesh = triangulate_grid(2, 2, 1.0, 1.0)
    op = assemble(mesh, constant_field(mesh, 0.0, 1.0, 1.0))
    scale = np.sqrt([3.0, 6.0, 6.0, 3.0])
    expected = scale[:, None] * UNIT_SQUARE_STIFFNESS * scale[None, :]
    np.testing.assert_allclose(op.c_inv_sqrt, scale)
    np.testing.assert_allclose(op.stiffness.toarray(), expected, atol=1e-13)


def test_stiffness_is_exactly_symmetric(small_operator: FemOperator) -> None:
    """Test bitwise symmetry of the stored stiffness."""
    dense = small_operator.stiffness.toarray()
    np.testing.assert_array_equal(dense, dense.T)


def test_null_vector(small_operator: FemOperator) -> None:
    """Test that C^{1/2} 1 spans the kernel of S under Neumann boundaries."""
    residual = small_operator.stiffness @ small_operator.null_vector
    assert np.max(np.abs(residual)) < 1e-12


def test_spectrum_is_non_negative() -> None:
    """Test positive semi-definiteness with a rotating anisotropy field."""
    mesh = triangulate_grid(8, 7, 0.5, 1.5)
    op = assemble(mesh, vortex_field(mesh, 3.0, 0.5))
    eigenvalues = np.linalg.eigvalsh(op.stiffness.toarray())
    assert eigenvalues.min() > -1e-10


def test_eig_upper_bounds_spectrum_random_fields() -> None:
    """Test the eigenvalue bound on randomized grids and anisotropy fields."""
    rng = np.random.default_rng(2024)
    for _ in range(50):
        nx, ny = rng.integers(2, 21, size=2)
        dx, dy = rng.uniform(0.2, 3.0, size=2)
        mesh = triangulate_grid(int(nx), int(ny), float(dx), float(dy))
        n = mesh.n_nodes
        field = AnisotropyField(
            theta=rng.uniform(-np.pi, np.pi, n),
            rho1=rng.uniform(0.2, 6.0, n),
            rho2=rng.uniform(0.2, 6.0, n),
        )
        op = assemble(mesh, field)
        top = np.linalg.eigvalsh(op.stiffness.toarray()).max()
        assert top <= op.eig_upper * (1 + 1e-12)


def test_bounds_on_small_matrix() -> None:
    """Test the Gershgorin and Frobenius bounds on a known matrix."""
    matrix = sparse.csr_matrix(np.array([[2.0, -1.0], [-1.0, 2.0]]))
    assert gershgorin_bound(matrix) == pytest.approx(3.0)
    assert frobenius_bound(matrix) == pytest.approx(np.sqrt(10.0))
    assert eig_upper_bound(matrix) == pytest.approx(3.0)


def test_bound_rejects_non_square() -> None:
    """Test that a rectangular matrix is rejected."""
    with pytest.raises(InvalidArgumentError):
        eig_upper_bound(sparse.csr_matrix(np.ones((2, 3))))


def test_assemble_rejects_empty_mesh() -> None:
    """Test that a mesh without triangles cannot be assembled."""
    mesh = point_grid(3, 1, 1.0, 1.0)
    with pytest.raises(AssemblyError):
        assemble(mesh, constant_field(mesh, 0.0, 1.0, 1.0))


def test_masses_scale_with_density() -> None:
    """Test that lumped masses carry the metric density h."""
    mesh = triangulate_grid(3, 3, 1.0, 1.0)
    unit, _ = assemble_weak_forms(mesh, constant_field(mesh, 0.0, 1.0, 1.0))
    stretched, _ = assemble_weak_forms(mesh, constant_field(mesh, 0.4, 2.0, 5.0))
    np.testing.assert_allclose(stretched, unit / 10.0)
    assert unit.sum() == pytest.approx(4.0)
