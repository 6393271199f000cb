"""Random field components and their covariance operators."""

import time
from abc import ABC, abstractmethod
from collections.abc import Callable
from typing import ClassVar, Literal

import numpy as np

from src.chebfilter import (
    ChebyshevApprox,
    RowBlockMatvec,
    apply_matrix_function,
    apply_polynomial,
    chebyshev_fit,
    fit_auto,
)
from src.errors import InvalidArgumentError, StateError
from src.fem import FemOperator, assemble
from src.geometry import AnisotropyField, TriMesh
from src.spectral import SpectralModel, spectral_function, sqrt_spectral_function
from src.utils.logging import get_logger, log_event

logger = get_logger(__name__)

DEFAULT_DEGREE = 256
DEFAULT_MAX_DEGREE = 2048
DEFAULT_FIT_TOLERANCE = 1e-6


class ComponentModel(ABC):
    """Abstract base class for one independent component of the observed field."""

    kind: ClassVar[Literal["fem-spectral", "nugget"]]

    def __init__(self, spectral: SpectralModel, name: str) -> None:
        self.spectral = spectral
        self.name = name

    @property
    def sill(self) -> float:
        return self.spectral.sill

    @property
    @abstractmethod
    def size(self) -> int | None:
        """Number of nodes the component acts on, or None if unconstrained."""
        ...

    @abstractmethod
    def apply(self, v: np.ndarray) -> np.ndarray:
        """Apply the covariance matrix of the component.

        Args:
            v: Vector of length n or an (n, m) block

        Returns:
            The covariance product, same shape as ``v``

        Raises:
            StateError: If the component has not been prepared
        """
        ...

    @abstractmethod
    def apply_sqrt(self, w: np.ndarray) -> np.ndarray:
        """Map white noise to a sample with the component covariance."""
        ...

    def close(self) -> None:
        """Release worker threads, if any."""


class NuggetComponent(ComponentModel):
    """White noise: the covariance is sill times the identity."""

    kind = "nugget"

    def __init__(self, spectral: SpectralModel, name: str = "nugget") -> None:
        if not spectral.is_nugget:
            raise InvalidArgumentError(
                f"nugget components need the nugget family, got {spectral.family}"
            )
        super().__init__(spectral, name)
        self._size: int | None = None

    def prepare(self, mesh: TriMesh) -> "NuggetComponent":
        self._size = mesh.n_nodes
        return self

    @property
    def size(self) -> int | None:
        return self._size

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self.sill * np.asarray(v, dtype=np.float64)

    def apply_sqrt(self, w: np.ndarray) -> np.ndarray:
        return float(np.sqrt(self.sill)) * np.asarray(w, dtype=np.float64)


class FemSpectralComponent(ComponentModel):
    """Non-stationary component Sigma = C^{-1/2} g(S) C^{-1/2} on a mesh."""

    kind = "fem-spectral"

    def __init__(
        self, spectral: SpectralModel, aniso: AnisotropyField, name: str = "signal"
    ) -> None:
        if spectral.is_nugget:
            raise InvalidArgumentError(
                "nugget models have no finite element representation"
            )
        super().__init__(spectral, name)
        self.aniso = aniso
        self.operator: FemOperator | None = None
        self.g_approx: ChebyshevApprox | None = None
        self.sqrt_g_approx: ChebyshevApprox | None = None
        self._matvec: RowBlockMatvec | None = None

    def prepare(
        self,
        mesh: TriMesh,
        degree: int | None = None,
        fit_tolerance: float = DEFAULT_FIT_TOLERANCE,
        max_degree: int = DEFAULT_MAX_DEGREE,
        interval_end: float | None = None,
        with_sqrt: bool = False,
        threads: int = 1,
    ) -> "FemSpectralComponent":
        """Assemble the operator and fit the Chebyshev expansions.

        Args:
            mesh: Triangulated observation grid
            degree: Fixed Chebyshev degree; None selects it by degree doubling
            fit_tolerance: Relative uniform error targeted by degree doubling
            max_degree: Cap for degree doubling
            interval_end: Override of the fitting interval end, default eig_upper
            with_sqrt: Also fit sqrt(g) for simulation
            threads: Worker threads of the sparse product

        Returns:
            The prepared component
        """
        start_time = time.time()
        self.close()
        self.operator = assemble(mesh, self.aniso)
        end = self.operator.eig_upper if interval_end is None else float(interval_end)

        def fit(g_fn: Callable[[np.ndarray], np.ndarray]) -> ChebyshevApprox:
            if degree is not None:
                return chebyshev_fit(g_fn, end, degree)
            return fit_auto(
                g_fn,
                end,
                degree=min(DEFAULT_DEGREE, max_degree),
                rel_tol=fit_tolerance,
                max_degree=max_degree,
            )

        self.g_approx = fit(spectral_function(self.spectral))
        self.sqrt_g_approx = (
            fit(sqrt_spectral_function(self.spectral)) if with_sqrt else None
        )
        self._matvec = RowBlockMatvec(self.operator.stiffness, threads=threads)

        log_event(
            logger,
            "component_prepared",
            module="krige",
            elapsed_ms=(time.time() - start_time) * 1000,
            component=self.name,
            family=self.spectral.family,
            degree=self.g_approx.degree,
            fit_error=self.g_approx.fit_error,
            sqrt_degree=self.sqrt_g_approx.degree if self.sqrt_g_approx else None,
            interval_end=end,
            eig_upper=self.operator.eig_upper,
        )
        return self

    @property
    def size(self) -> int | None:
        return self.operator.size if self.operator is not None else None

    @property
    def degree(self) -> int | None:
        return self.g_approx.degree if self.g_approx is not None else None

    def apply(self, v: np.ndarray) -> np.ndarray:
        if self.operator is None or self.g_approx is None:
            raise StateError(f"component '{self.name}' has not been assembled")
        return apply_matrix_function(self.operator, self.g_approx, v, self._matvec)

    def apply_sqrt(self, w: np.ndarray) -> np.ndarray:
        if self.operator is None:
            raise StateError(f"component '{self.name}' has not been assembled")
        if self.sqrt_g_approx is None:
            raise StateError(
                f"component '{self.name}' was prepared without a "
                "square-root approximation"
            )
        x = np.asarray(w, dtype=np.float64)
        c = self.operator.c_inv_sqrt
        if x.ndim > 1:
            c = c[:, None]
        return c * apply_polynomial(self.operator, self.sqrt_g_approx, x, self._matvec)

    def close(self) -> None:
        if self._matvec is not None:
            self._matvec.close()
            self._matvec = None


def apply_component(component: ComponentModel, v: np.ndarray) -> np.ndarray:
    """Apply the covariance of ``component`` to ``v``."""
    return component.apply(v)


def build_component(
    spectral: SpectralModel,
    mesh: TriMesh,
    aniso: AnisotropyField | None = None,
    name: str | None = None,
    **prepare_options: object,
) -> ComponentModel:
    """Create and prepare the component matching ``spectral``.

    Nugget models become a NuggetComponent and ignore ``aniso``; every
    other family needs an anisotropy field on ``mesh``.

    Raises:
        InvalidArgumentError: If a non-nugget model comes without anisotropy
    """
    if spectral.is_nugget:
        return NuggetComponent(spectral, name or "nugget").prepare(mesh)
    if aniso is None:
        raise InvalidArgumentError(
            f"{spectral.family} components need an anisotropy field"
        )
    component = FemSpectralComponent(spectral, aniso, name or "signal")
    return component.prepare(mesh, **prepare_options)  # type: ignore[arg-type]
