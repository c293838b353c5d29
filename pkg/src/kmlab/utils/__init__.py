"""Utility modules."""

from kmlab.utils.linalg import (
    RATIONALS,
    EchelonBasis,
    ScalarField,
    hnf_lattice_basis,
    inverse,
    nullspace,
    rank,
    rref,
    solve,
)

__all__ = [
    "RATIONALS",
    "EchelonBasis",
    "ScalarField",
    "hnf_lattice_basis",
    "inverse",
    "nullspace",
    "rank",
    "rref",
    "solve",
]
