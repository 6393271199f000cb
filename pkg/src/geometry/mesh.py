"""Structured triangulation of a regular observation grid."""

from dataclasses import dataclass

import numpy as np

from src.errors import InvalidArgumentError


@dataclass(frozen=True)
class TriMesh:
    """Planar triangulation with P1 basis bookkeeping.

    Nodes are indexed row-major, ``node(i, j) = j * nx + i``, so rasters map
    one-to-one onto node indices. Triangles are counter-clockwise.
    """

    nodes: np.ndarray
    triangles: np.ndarray
    nx: int
    ny: int
    dx: float
    dy: float

    @property
    def n_nodes(self) -> int:
        return int(self.nodes.shape[0])

    @property
    def n_triangles(self) -> int:
        return int(self.triangles.shape[0])

    def node_index(self, i: int, j: int) -> int:
        """Return the index of grid node (i, j)."""
        if not (0 <= i < self.nx and 0 <= j < self.ny):
            raise InvalidArgumentError(
                f"grid node ({i}, {j}) outside {self.nx}x{self.ny}"
            )
        return j * self.nx + i


@dataclass(frozen=True)
class ElementGeometry:
    """Area, constant P1 gradients and centroid of one or more triangles."""

    area: np.ndarray
    gradients: np.ndarray
    centroid: np.ndarray


def triangulate_grid(nx: int, ny: int, dx: float, dy: float) -> TriMesh:
    """Split each cell of an nx-by-ny node grid into two CCW triangles.

    The cut runs from the lower-left to the upper-right corner of every cell.

    Args:
        nx: Number of nodes along x
        ny: Number of nodes along y
        dx: Node spacing along x
        dy: Node spacing along y

    Returns:
        The triangulation

    Raises:
        InvalidArgumentError: If a dimension is below 2 or a spacing is not positive
    """
    if nx < 2 or ny < 2:
        raise InvalidArgumentError(f"grid needs at least 2x2 nodes, got {nx}x{ny}")
    if not (dx > 0 and dy > 0):
        raise InvalidArgumentError(
            f"grid spacings must be positive, got dx={dx}, dy={dy}"
        )

    ii, jj = np.meshgrid(np.arange(nx), np.arange(ny), indexing="xy")
    nodes = np.column_stack(
        [ii.ravel().astype(np.float64) * dx, jj.ravel().astype(np.float64) * dy]
    )

    ci, cj = np.meshgrid(np.arange(nx - 1), np.arange(ny - 1), indexing="xy")
    lower_left = (cj * nx + ci).ravel()
    lower_right = lower_left + 1
    upper_left = lower_left + nx
    upper_right = upper_left + 1

    first = np.column_stack([lower_left, lower_right, upper_right])
    second = np.column_stack([lower_left, upper_right, upper_left])
    triangles = np.stack([first, second], axis=1).reshape(-1, 3).astype(np.int64)

    return TriMesh(
        nodes=nodes,
        triangles=triangles,
        nx=int(nx),
        ny=int(ny),
        dx=float(dx),
        dy=float(dy),
    )


def point_grid(nx: int, ny: int, dx: float, dy: float) -> TriMesh:
    """Grid nodes without triangles, for point statistics on rasters of any shape."""
    if nx < 1 or ny < 1:
        raise InvalidArgumentError(f"grid needs at least one node, got {nx}x{ny}")
    if not (dx > 0 and dy > 0):
        raise InvalidArgumentError(
            f"grid spacings must be positive, got dx={dx}, dy={dy}"
        )
    ii, jj = np.meshgrid(np.arange(nx), np.arange(ny), indexing="xy")
    nodes = np.column_stack([ii.ravel() * float(dx), jj.ravel() * float(dy)])
    return TriMesh(
        nodes=nodes,
        triangles=np.empty((0, 3), dtype=np.int64),
        nx=int(nx),
        ny=int(ny),
        dx=float(dx),
        dy=float(dy),
    )


def element_geometries(mesh: TriMesh) -> ElementGeometry:
    """Compute areas, P1 gradients and centroids of all triangles at once.

    ``gradients`` has shape (m, 3, 2): the gradient of the hat function of
    each local vertex.
    """
    p = mesh.nodes[mesh.triangles]
    x, y = p[:, :, 0], p[:, :, 1]
    # signed double area
    det = (x[:, 1] - x[:, 0]) * (y[:, 2] - y[:, 0]) - (x[:, 2] - x[:, 0]) * (
        y[:, 1] - y[:, 0]
    )

    gradients = np.empty((mesh.n_triangles, 3, 2))
    for a in range(3):
        b, c = (a + 1) % 3, (a + 2) % 3
        gradients[:, a, 0] = (y[:, b] - y[:, c]) / det
        gradients[:, a, 1] = (x[:, c] - x[:, b]) / det

    return ElementGeometry(area=0.5 * det, gradients=gradients, centroid=p.mean(axis=1))


def element_geometry(mesh: TriMesh, t: int) -> ElementGeometry:
    """Return the geometry of triangle ``t``.

    Raises:
        InvalidArgumentError: If ``t`` is not a valid triangle index
    """
    if not 0 <= t < mesh.n_triangles:
        raise InvalidArgumentError(
            f"triangle index {t} out of range [0, {mesh.n_triangles})"
        )
    single = TriMesh(
        nodes=mesh.nodes,
        triangles=mesh.triangles[t : t + 1],
        nx=mesh.nx,
        ny=mesh.ny,
        dx=mesh.dx,
        dy=mesh.dy,
    )
    geometry = element_geometries(single)
    return ElementGeometry(
        area=geometry.area[0],
        gradients=geometry.gradients[0],
        centroid=geometry.centroid[0],
    )
