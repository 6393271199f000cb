"""Factorial kriging problem and result containers."""

import math
from dataclasses import dataclass, field

import numpy as np

from src.errors import InvalidArgumentError
from src.krige.components import ComponentModel

DEFAULT_TOL = 1e-6
DEFAULT_JITTER_SCALE = 1e-6
MAX_ITER_FACTOR = 10.0


@dataclass
class FilterProblem:
    """Observations plus the signal and noise components they decompose into.

    ``jitter=None`` selects the default ridge: zero when a nugget noise is
    present, otherwise ``jitter_scale`` times the summed sills.
    """

    data: np.ndarray
    signal: ComponentModel
    noises: list[ComponentModel] = field(default_factory=list)
    tol: float = DEFAULT_TOL
    max_iter: int | None = None
    jitter: float | None = None
    jitter_scale: float = DEFAULT_JITTER_SCALE

    def __post_init__(self) -> None:
        self.data = np.asarray(self.data, dtype=np.float64).ravel()
        n = self.data.size
        if n == 0:
            raise InvalidArgumentError("data must not be empty")
        if not np.all(np.isfinite(self.data)):
            raise InvalidArgumentError("data contains non-finite values")
        if not self.tol > 0:
            raise InvalidArgumentError(f"tol must be positive, got {self.tol}")
        if self.max_iter is not None and self.max_iter < 1:
            raise InvalidArgumentError(
                f"max_iter must be at least 1, got {self.max_iter}"
            )
        if self.jitter is not None and not self.jitter >= 0:
            raise InvalidArgumentError(
                f"jitter must be non-negative, got {self.jitter}"
            )
        for component in self.components:
            if component.size is not None and component.size != n:
                raise InvalidArgumentError(
                    f"component '{component.name}' acts on {component.size} nodes, "
                    f"data has {n}"
                )

    @property
    def components(self) -> list[ComponentModel]:
        return [self.signal, *self.noises]

    @property
    def size(self) -> int:
        return int(self.data.size)

    @property
    def iteration_cap(self) -> int:
        if self.max_iter is not None:
            return self.max_iter
        return math.ceil(MAX_ITER_FACTOR * math.sqrt(self.size))

    @property
    def effective_jitter(self) -> float:
        if self.jitter is not None:
            return float(self.jitter)
        if any(c.kind == "nugget" for c in self.components):
            return 0.0
        return self.jitter_scale * sum(c.sill for c in self.components)


@dataclass
class FilterResult:
    """Outcome of a conjugate gradient filtering run.

    ``weights`` holds the CG solution y of (sum Sigma + jitter I) y = z, from
    which any component estimate Sigma_c y can be formed.
    """

    estimates: np.ndarray
    iterations: int
    final_residual: float
    residual_history: list[float]
    jitter: float
    weights: np.ndarray
