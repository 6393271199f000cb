"""Matrix-free application of g(S) through the Chebyshev recurrence.

For a fitted expansion of g on [0, l] the product P_g(S) v is accumulated
from T_0 v = v, T_1 v = (2/l) S v - v and

    T_{k+1} v = (4/l) S T_k v - 2 T_k v - T_{k-1} v,

which costs one sparse product per degree. The covariance of a component
is then C^{-1/2} P_g(S) C^{-1/2} v with C the lumped mass diagonal.
"""

from collections.abc import Callable

import numpy as np
from numpy.polynomial import polynomial as P

from src.chebfilter.approx import ChebyshevApprox, chebyshev_fit
from src.errors import InvalidArgumentError, PreconditionError
from src.fem.assembly import FemOperator

Matvec = Callable[[np.ndarray], np.ndarray]


def _check(op: FemOperator, v: np.ndarray) -> np.ndarray:
    arr = np.asarray(v, dtype=np.float64)
    if arr.ndim not in (1, 2) or arr.shape[0] != op.size:
        raise InvalidArgumentError(
            f"expected a vector or block with {op.size} rows, got shape {arr.shape}"
        )
    return arr


def _scaling(op: FemOperator, v: np.ndarray) -> np.ndarray:
    return op.c_inv_sqrt if v.ndim == 1 else op.c_inv_sqrt[:, None]


def _default_matvec(op: FemOperator) -> Matvec:
    def matvec(x: np.ndarray) -> np.ndarray:
        return np.asarray(op.stiffness @ x)

    return matvec


def apply_polynomial(
    op: FemOperator,
    approx: ChebyshevApprox,
    v: np.ndarray,
    matvec: Matvec | None = None,
) -> np.ndarray:
    """Return P(S) v for the Chebyshev expansion ``approx``, without scalings.

    Raises:
        PreconditionError: If the expansion interval does not cover the spectrum
        InvalidArgumentError: If ``v`` does not match the operator size
    """
    if approx.interval_end < op.eig_upper:
        raise PreconditionError(
            f"Chebyshev interval [0, {approx.interval_end}] does not cover "
            f"the spectral bound {op.eig_upper}"
        )
    x = _check(op, v)
    apply = matvec or _default_matvec(op)
    coeffs = approx.coeffs
    scale = 2.0 / approx.interval_end

    prev = x
    out = 0.5 * coeffs[0] * prev
    if approx.degree == 0:
        return out
    cur = scale * apply(prev) - prev
    out = out + coeffs[1] * cur
    for k in range(2, approx.degree + 1):
        prev, cur = cur, 2.0 * (scale * apply(cur) - cur) - prev
        out += coeffs[k] * cur
    return out


def apply_matrix_function(
    op: FemOperator,
    approx: ChebyshevApprox,
    v: np.ndarray,
    matvec: Matvec | None = None,
) -> np.ndarray:
    """Apply the covariance C^{-1/2} P_g(S) C^{-1/2} to a vector or column block.

    Args:
        op: Assembled FEM operator
        approx: Chebyshev expansion of g, fitted on an interval covering the spectrum
        v: Vector of length n or an (n, m) block
        matvec: Optional replacement for the sparse product with S

    Returns:
        The covariance product, same shape as ``v``

    Raises:
        PreconditionError: If the expansion interval is shorter than op.eig_upper
    """
    x = _check(op, v)
    c = _scaling(op, x)
    return c * apply_polynomial(op, approx, c * x, matvec)


def apply_precision(
    op: FemOperator, p0: np.ndarray, v: np.ndarray, matvec: Matvec | None = None
) -> np.ndarray:
    """Apply Q = C^{1/2} P0(S) C^{1/2} with P0 in ascending power basis (Horner)."""
    x = _check(op, v)
    sqrt_c = 1.0 / _scaling(op, x)
    apply = matvec or _default_matvec(op)
    coeffs = np.asarray(p0, dtype=np.float64)
    u = sqrt_c * x
    acc = coeffs[-1] * u
    for a in coeffs[-2::-1]:
        acc = apply(acc) + a * u
    return sqrt_c * acc


def _check_positive(p0: np.ndarray, upper: float) -> None:
    if p0.size == 0 or not np.all(np.isfinite(p0)):
        raise InvalidArgumentError("P0 needs at least one finite coefficient")
    trimmed = np.trim_zeros(p0, "b")
    if trimmed.size == 0:
        raise InvalidArgumentError("P0 is identically zero")
    roots = P.polyroots(trimmed) if trimmed.size > 1 else np.array([])
    real = roots[np.abs(roots.imag) <= 1e-12 * np.maximum(1.0, np.abs(roots))].real
    inside = real[(real >= 0.0) & (real <= upper)]
    if inside.size:
        raise InvalidArgumentError(
            f"P0 has a root at {inside[0]!r} inside [0, {upper}]"
        )
    if P.polyval(0.0, trimmed) <= 0.0:
        raise InvalidArgumentError("P0 must be strictly positive on the spectrum")


def matrix_polynomial_consistency(
    op: FemOperator,
    p0: np.ndarray,
    v: np.ndarray,
    degree: int = 200,
    matvec: Matvec | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Pair the covariance of g = 1/P0 with the precision built from P0.

    Returns:
        (Sigma v, Q Sigma v); the second entry reproduces v up to the
        Chebyshev error when both sides describe the same Markov field

    Raises:
        InvalidArgumentError: If P0 has a root on [0, eig_upper]
    """
    coeffs = np.asarray(p0, dtype=np.float64).ravel()
    _check_positive(coeffs, op.eig_upper)
    interval = op.eig_upper if op.eig_upper > 0 else 1.0

    def inverse(lam: np.ndarray) -> np.ndarray:
        return 1.0 / np.asarray(P.polyval(lam, coeffs))

    approx = chebyshev_fit(inverse, interval, degree)
    sigma_v = apply_matrix_function(op, approx, v, matvec)
    return sigma_v, apply_precision(op, coeffs, sigma_v, matvec)
