"""Cheap upper bounds on the spectrum of symmetric positive semi-definite matrices."""

import numpy as np
from scipy import sparse

from src.errors import InvalidArgumentError


def gershgorin_bound(matrix: sparse.spmatrix) -> float:
    """Largest absolute row sum; bounds the spectrum of a PSD matrix."""
    abs_rows = abs(sparse.csr_matrix(matrix)).sum(axis=1)
    return float(np.max(abs_rows)) if matrix.shape[0] else 0.0


def frobenius_bound(matrix: sparse.spmatrix) -> float:
    """Frobenius norm, which dominates the largest eigenvalue."""
    data = sparse.csr_matrix(matrix).data
    return float(np.sqrt(np.dot(data, data)))


def eig_upper_bound(stiffness: sparse.spmatrix) -> float:
    """Return min(Gershgorin, Frobenius), a bound on every eigenvalue.

    Raises:
        InvalidArgumentError: If the matrix is not square
    """
    rows, cols = stiffness.shape
    if rows != cols:
        raise InvalidArgumentError(f"expected a square matrix, got {rows}x{cols}")
    return min(gershgorin_bound(stiffness), frobenius_bound(stiffness))
