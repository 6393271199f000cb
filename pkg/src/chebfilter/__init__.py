"""Chebyshev approximation and matrix-free covariance products."""

from .approx import ChebyshevApprox, chebyshev_fit, chebyshev_nodes, fit_auto, halved
from .matfun import (
    apply_matrix_function,
    apply_polynomial,
    apply_precision,
    matrix_polynomial_consistency,
)
from .matvec import RowBlockMatvec

__all__ = [
    "ChebyshevApprox",
    "RowBlockMatvec",
    "apply_matrix_function",
    "apply_polynomial",
    "apply_precision",
    "chebyshev_fit",
    "chebyshev_nodes",
    "fit_auto",
    "halved",
    "matrix_polynomial_consistency",
]
