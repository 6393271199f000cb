"""Matrix-free factorial kriging by conjugate gradient.

The kriging weights y solve (Sigma_S + sum_k Sigma_N^(k) + jitter I) y = z
and the filtered signal is Sigma_S y. Only products with the component
covariances are needed, never the matrices themselves.
"""

import math
import time
from collections.abc import Callable

import numpy as np

from src.errors import ConvergenceError, InvalidArgumentError, ModelError
from src.krige.components import ComponentModel
from src.krige.problem import FilterProblem, FilterResult
from src.utils.logging import get_logger, log_event

logger = get_logger(__name__)

IterationCallback = Callable[[int, np.ndarray, np.ndarray], None]


def system_operator(
    components: list[ComponentModel], jitter: float = 0.0
) -> Callable[[np.ndarray], np.ndarray]:
    """Return v -> (sum of component covariances + jitter I) v."""

    def apply(v: np.ndarray) -> np.ndarray:
        out = jitter * v if jitter else np.zeros_like(v, dtype=np.float64)
        for component in components:
            out = out + component.apply(v)
        return out

    return apply


def filter(
    problem: FilterProblem, callback: IterationCallback | None = None
) -> FilterResult:
    """Estimate the signal component at every observation node.

    Starts from y = 0 and stops once ||r|| <= tol * ||z||.

    Args:
        problem: Observations and the component models
        callback: Called as callback(k, y, r) after each iteration

    Returns:
        Signal estimates with iteration count and residual history

    Raises:
        ModelError: If the system operator shows non-positive curvature
        ConvergenceError: If the iteration cap is reached first
    """
    start_time = time.time()
    z = problem.data
    jitter = problem.effective_jitter
    apply_system = system_operator(problem.components, jitter)
    cap = problem.iteration_cap

    z_norm = float(np.linalg.norm(z))
    y = np.zeros_like(z)
    if z_norm == 0.0:
        return FilterResult(
            estimates=np.zeros_like(z),
            iterations=0,
            final_residual=0.0,
            residual_history=[0.0],
            jitter=jitter,
            weights=y,
        )

    threshold = problem.tol * z_norm
    r = z.copy()
    d = r.copy()
    rr = float(r @ r)
    history = [math.sqrt(rr) / z_norm]
    k = 0
    while math.sqrt(rr) > threshold:
        if k >= cap:
            estimates = problem.signal.apply(y)
            logger.warning(
                "cg_not_converged",
                iterations=k,
                relative_residual=history[-1],
                tol=problem.tol,
            )
            raise ConvergenceError(
                f"conjugate gradient did not reach tol={problem.tol} in {k} iterations "
                f"(relative residual {history[-1]:.3e})",
                residual_history=history,
                iterations=k,
                estimates=estimates,
            )
        p = apply_system(d)
        curvature = float(d @ p)
        if not curvature > 0.0:
            raise ModelError(
                f"non-positive curvature {curvature:.3e} at iteration {k}: the summed "
                "covariance is not positive definite; add a nugget component or jitter"
            )
        alpha = rr / curvature
        y = y + alpha * d
        r = r - alpha * p
        rr_next = float(r @ r)
        beta = rr_next / rr
        d = r + beta * d
        rr = rr_next
        k += 1
        history.append(math.sqrt(rr) / z_norm)
        logger.debug("cg_iteration", iteration=k, relative_residual=history[-1])
        if callback is not None:
            callback(k, y, r)

    estimates = problem.signal.apply(y)
    log_event(
        logger,
        "cg_converged",
        module="krige",
        elapsed_ms=(time.time() - start_time) * 1000,
        iterations=k,
        relative_residual=history[-1],
        jitter=jitter,
        nodes=problem.size,
    )
    return FilterResult(
        estimates=estimates,
        iterations=k,
        final_residual=history[-1],
        residual_history=history,
        jitter=jitter,
        weights=y,
    )


def component_estimate(component: ComponentModel, result: FilterResult) -> np.ndarray:
    """Kriging estimate Sigma_c y of any component from a finished run."""
    return component.apply(result.weights)


def noise_estimate(data: np.ndarray, estimates: np.ndarray) -> np.ndarray:
    """Residual data - estimates, the part of the data attributed to noise.

    Raises:
        InvalidArgumentError: If the arrays differ in shape
    """
    z = np.asarray(data, dtype=np.float64)
    s = np.asarray(estimates, dtype=np.float64)
    if z.shape != s.shape:
        raise InvalidArgumentError(
            f"shape mismatch: data {z.shape}, estimates {s.shape}"
        )
    return z - s
