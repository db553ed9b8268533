"""Exact convex chains, virtual polytopes and their measures.

Polytopes, chains, lattice and volume measures, winding-number chains of
planar cycles, nerves of affine arrangements, and BKK root counts.
"""

from .bkk import (
    LaurentPolynomial,
    Tolerances,
    bkk_number,
    count_torus_roots_2d,
    newton_polytope,
    run_harness,
    sample_system,
    virtual_bkk,
)
from .chains import (
    ConvexChain,
    VirtualPolytope,
    chain_of,
    chains_equal,
    evaluate,
    inverse,
    one,
    power,
    product,
    truncate_lower_dim,
    virtual_polytope,
    zero,
)
from .geometry import (
    ConvexPolytope,
    DimensionError,
    analogous,
    box,
    dilate,
    hull,
    lattice_points,
    minkowski_sum,
    normal_fan,
    origin,
    point,
    support_value,
    translate,
)
from .measures import (
    FitError,
    VirtualBody,
    dilate_chain,
    fit_polynomial,
    lattice_measure,
    minkowski_polynomiality_check,
    mixed_volume,
    virtual_mixed_volume,
    virtual_volume,
    volume,
)
from .nerve_homology import (
    AffineSubspace,
    ArrangementX,
    NotDominatedError,
    SimplicialComplex,
    TranslationTuple,
    compatible_map,
    compatible_space,
    dominates,
    equivalent,
    homology_ranks,
    integral_F,
    intersect,
    is_compatible,
    nerve,
    parallel_core,
    translate_map,
    wedge_check,
)
from .polynomial import MultiPolynomial
from .winding import (
    PLCycle,
    SupportFunctionPL,
    WindingChain,
    complement_regions,
    gauss_type_map,
    integrate_form_over_chain,
    integrate_pullback,
    smooth_support_demo,
    winding_truncation_check,
    virtual_volume_from_support,
    winding_chain,
    winding_number,
)

__version__ = "0.1.0"
