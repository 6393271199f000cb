"""Finite element matrices of the anisotropic Laplacian."""

from .assembly import BOUNDARY_CONDITION, FemOperator, assemble, assemble_weak_forms
from .bounds import eig_upper_bound, frobenius_bound, gershgorin_bound

__all__ = [
    "BOUNDARY_CONDITION",
    "FemOperator",
    "assemble",
    "assemble_weak_forms",
    "eig_upper_bound",
    "frobenius_bound",
    "gershgorin_bound",
]
