"""Multigraded section ring truncations, quadratic relations and Frobenius splittings."""

from kmlab.ring.frobenius import (
    SplittingCandidate,
    check_canonical_degree,
    check_compatibility,
    find_splitting,
    verify_quotient_splitting,
    verify_splitting,
)
from kmlab.ring.pluecker import (
    QuadricBlock,
    pluecker_quadrics,
    vanishing_at_extremal_points,
    verify_degree2_presentation,
)
from kmlab.ring.section_ring import (
    GradedRingTruncation,
    HomogeneousIdealTruncation,
    build_truncation,
    demazure_ideal,
    reduce_mod_p,
    verify_ideal,
)

__all__ = [
    "SplittingCandidate",
    "check_canonical_degree",
    "check_compatibility",
    "find_splitting",
    "verify_quotient_splitting",
    "verify_splitting",
    "QuadricBlock",
    "pluecker_quadrics",
    "vanishing_at_extremal_points",
    "verify_degree2_presentation",
    "GradedRingTruncation",
    "HomogeneousIdealTruncation",
    "build_truncation",
    "demazure_ideal",
    "reduce_mod_p",
    "verify_ideal",
]
