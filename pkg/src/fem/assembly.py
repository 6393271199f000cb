"""Assembly of the lumped mass factor and normalized anisotropic stiffness."""

import time
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from src.errors import AssemblyError
from src.fem.bounds import eig_upper_bound
from src.geometry.anisotropy import AnisotropyField, centroid_metric
from src.geometry.mesh import TriMesh, element_geometries
from src.utils.logging import get_logger, log_event

logger = get_logger(__name__)

# Natural (Neumann) boundary: only interior integrals are assembled.
BOUNDARY_CONDITION = "neumann"


@dataclass(frozen=True)
class FemOperator:
    """Diagonal of C^{-1/2}, normalized stiffness S (CSR) and a spectral bound."""

    c_inv_sqrt: np.ndarray
    stiffness: sparse.csr_matrix
    eig_upper: float

    @property
    def size(self) -> int:
        return int(self.c_inv_sqrt.size)

    @property
    def null_vector(self) -> np.ndarray:
        """Lumped-mass-scaled constant vector spanning the kernel of S."""
        return 1.0 / self.c_inv_sqrt


def _mirror_upper(matrix: sparse.spmatrix) -> sparse.csr_matrix:
    """Rebuild a symmetric matrix from its upper triangle so S_ij == S_ji bitwise."""
    upper = sparse.triu(matrix, format="csr")
    strict = sparse.triu(matrix, k=1, format="csr")
    mirrored = (upper + strict.T).tocsr()
    mirrored.sort_indices()
    return mirrored


def assemble_weak_forms(
    mesh: TriMesh, aniso: AnisotropyField
) -> tuple[np.ndarray, sparse.csr_matrix]:
    """Return lumped masses <psi_i, h> and stiffness <grad psi_i, h H grad psi_j>.

    Both integrals use the metric frozen at the element centroid; the
    stiffness is exact for that element-constant metric since P1 gradients
    are constant.
    """
    if mesh.n_triangles == 0 or mesh.n_nodes == 0:
        raise AssemblyError("cannot assemble on an empty mesh")
    aniso.check_mesh(mesh)

    geometry = element_geometries(mesh)
    metric = centroid_metric(aniso, mesh)
    weight = geometry.area * metric.h

    lumped = np.zeros(mesh.n_nodes)
    np.add.at(lumped, mesh.triangles, np.repeat(weight[:, None] / 3.0, 3, axis=1))

    # local[e, a, b] = weight_e * grad_a . H_e grad_b
    flux = np.einsum("eij,ebj->ebi", metric.H, geometry.gradients)
    local = weight[:, None, None] * np.einsum("eai,ebi->eab", geometry.gradients, flux)

    rows = np.repeat(mesh.triangles, 3, axis=1).ravel()
    cols = np.tile(mesh.triangles, (1, 3)).ravel()
    stiffness = sparse.coo_matrix(
        (local.ravel(), (rows, cols)), shape=(mesh.n_nodes, mesh.n_nodes)
    ).tocsr()
    return lumped, _mirror_upper(stiffness)


def assemble(mesh: TriMesh, aniso: AnisotropyField) -> FemOperator:
    """Assemble the FEM operator of one random field component.

    Args:
        mesh: Triangulation of the observation grid
        aniso: Anisotropy parameters on the mesh nodes

    Returns:
        The operator holding C^{-1/2}, the normalized stiffness and its bound

    Raises:
        AssemblyError: On an empty mesh or a non-positive lumped mass
    """
    start_time = time.time()
    lumped, stiffness = assemble_weak_forms(mesh, aniso)

    bad = np.flatnonzero(~(lumped > 0))
    if bad.size:
        raise AssemblyError(
            f"non-positive lumped mass at {bad.size} nodes (first: node {bad[0]})"
        )

    c_inv_sqrt = 1.0 / np.sqrt(lumped)
    scaling = sparse.diags(c_inv_sqrt)
    normalized = _mirror_upper(scaling @ stiffness @ scaling)
    eig_upper = eig_upper_bound(normalized)

    log_event(
        logger,
        "fem_assembled",
        module="fem",
        elapsed_ms=(time.time() - start_time) * 1000,
        nodes=mesh.n_nodes,
        nnz=int(normalized.nnz),
        eig_upper=eig_upper,
        boundary=BOUNDARY_CONDITION,
    )
    return FemOperator(c_inv_sqrt=c_inv_sqrt, stiffness=normalized, eig_upper=eig_upper)
