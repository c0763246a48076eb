"""Exact facet recognition for 0/1 knapsack polytopes, with brute-force oracles
and generators for the associated hardness reductions."""

from .core import (
    BasicSolution,
    Inequality,
    KnapsackInstance,
    NormalizedProblem,
    block_variants,
    enumerate_profiles,
    minimal_basic,
    normalize,
)
from .exact_linalg import affine_rank, convex_weights
from .oracle import (
    CssInstance,
    EvcInstance,
    OracleReport,
    brute_analyze,
    check_membership,
    enumerate_feasible,
    solve_css,
    solve_evc,
    solve_partition,
    verify_exact_knapsack,
)
from .recognizer import (
    FacetVerdict,
    NotFullDimensional,
    ValidityVerdict,
    check_facet,
    check_validity,
    face_dimension,
    tail_witness,
)
from .reductions import (
    css_to_ek,
    css_to_facets,
    css_to_supporting,
    evc_to_css,
    gu_decompose,
    gu_sequence,
    partition_to_membership,
)

__version__ = "0.1.0"
