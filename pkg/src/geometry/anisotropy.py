"""Local anisotropy fields and the metric tensors they induce.

Angles are measured counter-clockwise from the +x axis to the first-range
axis. Parameters live on mesh nodes and are interpolated to element
centroids, angles on the doubled-angle circle so that theta and theta + pi
describe the same ellipse.
"""

from dataclasses import dataclass

import numpy as np

from src.errors import InvalidArgumentError
from src.geometry.mesh import TriMesh


@dataclass(frozen=True)
class AnisotropyField:
    """Per-node anisotropy angle (radians) and ranges (length units)."""

    theta: np.ndarray
    rho1: np.ndarray
    rho2: np.ndarray

    def __post_init__(self) -> None:
        theta = np.asarray(self.theta, dtype=np.float64).ravel()
        rho1 = np.asarray(self.rho1, dtype=np.float64).ravel()
        rho2 = np.asarray(self.rho2, dtype=np.float64).ravel()
        if not (theta.size == rho1.size == rho2.size):
            raise InvalidArgumentError(
                "theta, rho1 and rho2 must have the same length, got "
                f"{theta.size}, {rho1.size}, {rho2.size}"
            )
        _check_ranges(rho1, rho2)
        if not np.all(np.isfinite(theta)):
            raise InvalidArgumentError("anisotropy angles must be finite")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "rho1", rho1)
        object.__setattr__(self, "rho2", rho2)

    @property
    def size(self) -> int:
        return int(self.theta.size)

    def check_mesh(self, mesh: TriMesh) -> None:
        """Raise if the field is not sized to ``mesh``."""
        if self.size != mesh.n_nodes:
            raise InvalidArgumentError(
                f"anisotropy field has {self.size} nodes, mesh has {mesh.n_nodes}"
            )


@dataclass(frozen=True)
class MetricSample:
    """Metric tensors H, shape (m, 2, 2), and densities h, shape (m,)."""

    H: np.ndarray
    h: np.ndarray


def _check_ranges(rho1: np.ndarray, rho2: np.ndarray) -> None:
    if not (np.all(rho1 > 0) and np.all(rho2 > 0)):
        raise InvalidArgumentError("anisotropy ranges must be strictly positive")
    if not (np.all(np.isfinite(rho1)) and np.all(np.isfinite(rho2))):
        raise InvalidArgumentError("anisotropy ranges must be finite")


def metric_at(
    theta: np.ndarray | float,
    rho1: np.ndarray | float,
    rho2: np.ndarray | float,
) -> MetricSample:
    """Build H = R(theta) diag(rho1^2, rho2^2) R(theta)^T and h = 1/(rho1 rho2).

    Args:
        theta: Anisotropy angles at the query points
        rho1: First ranges at the query points
        rho2: Second ranges at the query points

    Returns:
        The metric samples, one per query point

    Raises:
        InvalidArgumentError: If a range is not strictly positive
    """
    theta_a = np.atleast_1d(np.asarray(theta, dtype=np.float64))
    rho1_a = np.atleast_1d(np.asarray(rho1, dtype=np.float64))
    rho2_a = np.atleast_1d(np.asarray(rho2, dtype=np.float64))
    _check_ranges(rho1_a, rho2_a)
    theta_a, rho1_a, rho2_a = np.broadcast_arrays(theta_a, rho1_a, rho2_a)

    c, s = np.cos(theta_a), np.sin(theta_a)
    a, b = rho1_a**2, rho2_a**2
    H = np.empty(theta_a.shape + (2, 2))
    H[..., 0, 0] = a * c * c + b * s * s
    H[..., 1, 1] = a * s * s + b * c * c
    H[..., 0, 1] = (a - b) * c * s
    H[..., 1, 0] = H[..., 0, 1]
    return MetricSample(H=H, h=1.0 / (rho1_a * rho2_a))


def interpolate_to_centroids(
    field: AnisotropyField, mesh: TriMesh
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Average node parameters over each triangle.

    Ranges are averaged linearly; angles through (cos 2θ, sin 2θ) and halved back.
    """
    field.check_mesh(mesh)
    tri = mesh.triangles
    doubled = 2.0 * field.theta[tri]
    sin2, cos2 = np.sin(doubled).mean(axis=1), np.cos(doubled).mean(axis=1)
    theta_c = 0.5 * np.arctan2(sin2, cos2)
    return theta_c, field.rho1[tri].mean(axis=1), field.rho2[tri].mean(axis=1)


def centroid_metric(field: AnisotropyField, mesh: TriMesh) -> MetricSample:
    """Metric tensors frozen at the centroid of every triangle."""
    return metric_at(*interpolate_to_centroids(field, mesh))


def constant_field(
    mesh: TriMesh, theta: float, rho1: float, rho2: float
) -> AnisotropyField:
    """Give every node of ``mesh`` the same anisotropy parameters."""
    if not (rho1 > 0 and rho2 > 0):
        raise InvalidArgumentError(
            f"anisotropy ranges must be positive, got {rho1}, {rho2}"
        )
    n = mesh.n_nodes
    return AnisotropyField(
        theta=np.full(n, float(theta)),
        rho1=np.full(n, float(rho1)),
        rho2=np.full(n, float(rho2)),
    )
