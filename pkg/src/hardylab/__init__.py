"""Numerical laboratory for rotationally symmetric norms on the unit circle
and the subspace structures they support: Luxemburg gauges, outer flattening
multipliers, mod-n unimodular families, and truncated shift-invariant
subspaces with Wold decompositions."""

from .circle import (
    CircleFunction,
    CircleGrid,
    LaurentPoly,
    analyze,
    cesaro_mean,
    inner_product,
    is_analytic,
    rotate,
    synthesize,
)
from .norms import (
    NormFunctional,
    OrliczFunction,
    orlicz_norm,
    p_norm,
    sup_norm,
)
from .analytic import (
    OuterWitness,
    flattening_multiplier,
    harmonic_conjugate,
    outer_exp,
    riesz_projection,
)
from .modn import (
    ModMatrix,
    ModNDecomposition,
    UnimodularTuple,
    check_orthonormal_family,
    check_rows_orthonormal,
    decompose_mod_n,
    is_n_unimodular,
    kernel_space,
    matrix_of,
)
from .subspaces import (
    InnerProductSpace,
    TruncatedSubspace,
    WanderingDimensionError,
    WoldReport,
    beurling_extract,
    build_invariant,
    is_simply_invariant,
    shift,
    span,
    verify_structure_membership,
    wandering_space,
    wold_decompose,
)

__version__ = "0.1.0"

__all__ = [
    "CircleFunction",
    "CircleGrid",
    "LaurentPoly",
    "analyze",
    "cesaro_mean",
    "inner_product",
    "is_analytic",
    "rotate",
    "synthesize",
    "NormFunctional",
    "OrliczFunction",
    "orlicz_norm",
    "p_norm",
    "sup_norm",
    "OuterWitness",
    "flattening_multiplier",
    "harmonic_conjugate",
    "outer_exp",
    "riesz_projection",
    "ModMatrix",
    "ModNDecomposition",
    "UnimodularTuple",
    "check_orthonormal_family",
    "check_rows_orthonormal",
    "decompose_mod_n",
    "is_n_unimodular",
    "kernel_space",
    "matrix_of",
    "InnerProductSpace",
    "TruncatedSubspace",
    "WanderingDimensionError",
    "WoldReport",
    "beurling_extract",
    "build_invariant",
    "is_simply_invariant",
    "shift",
    "span",
    "verify_structure_membership",
    "wandering_space",
    "wold_decompose",
]
