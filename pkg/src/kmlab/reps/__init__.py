"""Characters, highest-weight modules and Demazure families."""

from kmlab.reps.chars import (
    CharacterPoly,
    RootTable,
    WeylKacReport,
    char_L,
    char_demazure,
    char_thick_demazure,
    check_weyl_kac,
    demazure_op,
    peterson_mults,
    real_roots,
)
from kmlab.reps.demazure import (
    DemazureFamily,
    family_intersection,
    family_sum,
    full_family,
    subspace_equal,
    subspace_intersect,
    subspace_sum,
    thick_demazure,
    thin_demazure,
    verify_containment_order,
    verify_cyclic,
    verify_distributive,
    verify_restriction,
    window_depths,
)
from kmlab.reps.modules import (
    HighestWeightModule,
    LatticeReport,
    ModuleVector,
    WeightSubspace,
)

__all__ = [
    "CharacterPoly",
    "RootTable",
    "WeylKacReport",
    "char_L",
    "char_demazure",
    "char_thick_demazure",
    "check_weyl_kac",
    "demazure_op",
    "peterson_mults",
    "real_roots",
    "DemazureFamily",
    "family_intersection",
    "family_sum",
    "full_family",
    "subspace_equal",
    "subspace_intersect",
    "subspace_sum",
    "thick_demazure",
    "thin_demazure",
    "verify_containment_order",
    "verify_cyclic",
    "verify_distributive",
    "verify_restriction",
    "window_depths",
    "HighestWeightModule",
    "LatticeReport",
    "ModuleVector",
    "WeightSubspace",
]
