"""Dense reference implementations for desk-scale verification.

Everything here densifies the operator and is guarded by a node limit.
"""

import time
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from src.errors import InvalidArgumentError, ModelError, SizeLimitError, StateError
from src.fem import FemOperator
from src.krige import ComponentModel, FemSpectralComponent, FilterProblem
from src.spectral import SpectralModel, spectral_function
from src.utils.logging import get_logger, log_event

logger = get_logger(__name__)

DEFAULT_MAX_NODES = 2000


@dataclass(frozen=True)
class DenseCovariance:
    """Dense covariance matrix and the spectrum of S it was built from."""

    matrix: np.ndarray
    eigenvalues: np.ndarray


def _guard(n: int, max_nodes: int) -> None:
    if n > max_nodes:
        raise SizeLimitError(
            f"dense oracle refuses n={n} above the guard of {max_nodes} nodes"
        )


def dense_matrix_function(
    op: FemOperator,
    g: Callable[[np.ndarray], np.ndarray],
    max_nodes: int = DEFAULT_MAX_NODES,
) -> DenseCovariance:
    """Build C^{-1/2} V diag(g(mu)) V^T C^{-1/2} from a full eigendecomposition of S.

    Eigenvalues are clipped at zero before g is applied, absorbing the
    roundoff around the constant null vector.

    Raises:
        SizeLimitError: If n exceeds ``max_nodes``
    """
    _guard(op.size, max_nodes)
    mu, vectors = linalg.eigh(op.stiffness.toarray())
    weights = np.asarray(g(np.maximum(mu, 0.0)), dtype=np.float64)
    inner = (vectors * weights) @ vectors.T
    matrix = op.c_inv_sqrt[:, None] * inner * op.c_inv_sqrt[None, :]
    return DenseCovariance(matrix=0.5 * (matrix + matrix.T), eigenvalues=mu)


def dense_covariance(
    op: FemOperator, model: SpectralModel, max_nodes: int = DEFAULT_MAX_NODES
) -> DenseCovariance:
    """Dense covariance of a catalog model on the operator's mesh.

    Raises:
        SizeLimitError: If n exceeds ``max_nodes``
        UnsupportedFamilyError: For the nugget family
    """
    return dense_matrix_function(op, spectral_function(model), max_nodes)


def dense_precision(
    op: FemOperator, p0: np.ndarray, max_nodes: int = DEFAULT_MAX_NODES
) -> np.ndarray:
    """Dense Q = C^{1/2} P0(S) C^{1/2} for P0 in ascending power basis."""
    _guard(op.size, max_nodes)
    coeffs = np.asarray(p0, dtype=np.float64).ravel()
    if coeffs.size == 0:
        raise InvalidArgumentError("P0 needs at least one coefficient")
    s = op.stiffness.toarray()
    poly = coeffs[-1] * np.eye(op.size)
    for a in coeffs[-2::-1]:
        poly = s @ poly + a * np.eye(op.size)
    sqrt_c = 1.0 / op.c_inv_sqrt
    return sqrt_c[:, None] * poly * sqrt_c[None, :]


def dense_component(
    component: ComponentModel, n: int, max_nodes: int = DEFAULT_MAX_NODES
) -> np.ndarray:
    """Exact dense covariance of one component (no Chebyshev approximation)."""
    _guard(n, max_nodes)
    if isinstance(component, FemSpectralComponent):
        if component.operator is None:
            raise StateError(f"component '{component.name}' has not been assembled")
        dense = dense_covariance(component.operator, component.spectral, max_nodes)
        return dense.matrix
    return component.sill * np.eye(n)


def dense_filter(
    problem: FilterProblem, max_nodes: int = DEFAULT_MAX_NODES
) -> np.ndarray:
    """Solve the factorial kriging system by dense Cholesky and return Sigma_S y.

    Raises:
        SizeLimitError: If n exceeds ``max_nodes``
        ModelError: If the summed covariance is not positive definite
    """
    start_time = time.time()
    n = problem.size
    _guard(n, max_nodes)
    signal = dense_component(problem.signal, n, max_nodes)
    system = signal + problem.effective_jitter * np.eye(n)
    for noise in problem.noises:
        system += dense_component(noise, n, max_nodes)
    try:
        factor = linalg.cho_factor(system)
    except linalg.LinAlgError as exc:
        raise ModelError(
            "summed covariance is not positive definite; "
            "add a nugget component or jitter"
        ) from exc
    weights = linalg.cho_solve(factor, problem.data)
    log_event(
        logger,
        "dense_filter_done",
        module="oracle",
        elapsed_ms=(time.time() - start_time) * 1000,
        nodes=n,
    )
    return np.asarray(signal @ weights)
