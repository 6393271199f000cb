"""Anisotropy layouts used by the synthetic filtering experiment."""

import numpy as np

from src.errors import InvalidArgumentError
from src.geometry.anisotropy import AnisotropyField
from src.geometry.mesh import TriMesh


def _centered(
    mesh: TriMesh, center: tuple[float, float] | None
) -> tuple[np.ndarray, np.ndarray]:
    if center is None:
        center = ((mesh.nx - 1) * mesh.dx / 2.0, (mesh.ny - 1) * mesh.dy / 2.0)
    return mesh.nodes[:, 0] - center[0], mesh.nodes[:, 1] - center[1]


def vortex_field(
    mesh: TriMesh,
    rho1: float,
    rho2: float,
    center: tuple[float, float] | None = None,
) -> AnisotropyField:
    """First-range axis tangent to circles around ``center``.

    The center defaults to the middle of the grid.
    """
    if not (rho1 > 0 and rho2 > 0):
        raise InvalidArgumentError(
            f"anisotropy ranges must be positive, got {rho1}, {rho2}"
        )
    u, v = _centered(mesh, center)
    theta = np.arctan2(v, u) + np.pi / 2.0
    return AnisotropyField(
        theta=theta,
        rho1=np.full(mesh.n_nodes, float(rho1)),
        rho2=np.full(mesh.n_nodes, float(rho2)),
    )


def cross_field(
    mesh: TriMesh,
    rho1: float,
    rho2: float,
    center: tuple[float, float] | None = None,
) -> AnisotropyField:
    """First-range axis along the closer diagonal of an X through ``center``."""
    if not (rho1 > 0 and rho2 > 0):
        raise InvalidArgumentError(
            f"anisotropy ranges must be positive, got {rho1}, {rho2}"
        )
    u, v = _centered(mesh, center)
    theta = np.where(u * v >= 0.0, np.pi / 4.0, -np.pi / 4.0)
    return AnisotropyField(
        theta=theta,
        rho1=np.full(mesh.n_nodes, float(rho1)),
        rho2=np.full(mesh.n_nodes, float(rho2)),
    )
