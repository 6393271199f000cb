"""Dense reference oracles."""

from .dense import (
    DEFAULT_MAX_NODES,
    DenseCovariance,
    dense_component,
    dense_covariance,
    dense_filter,
    dense_matrix_function,
    dense_precision,
)

__all__ = [
    "DEFAULT_MAX_NODES",
    "DenseCovariance",
    "dense_component",
    "dense_covariance",
    "dense_filter",
    "dense_matrix_function",
    "dense_precision",
]
