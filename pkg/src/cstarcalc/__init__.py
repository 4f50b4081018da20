"""Combinatorial invariants of C*-manifolds.

Exact index tables, filtration rank bounds, first-page spectral
approximations, attraction-graph diagnostics, and quantum filtration
ideals, computed from finite weight data over exact rationals.
"""

from cstarcalc.bounds import (
    BoundReport,
    BoundsError,
    FamilyHomologyBounds,
    bound_report,
    delta_at,
    delta_polyline,
    delta_ranks,
    family_homology_bounds,
)
from cstarcalc.findings import Finding, all_ok, failures
from cstarcalc.fixtures import (
    ALGEBRA_NAMES,
    MANIFOLD_NAMES,
    builtin_algebra,
    make_okm,
)
from cstarcalc.graph import (
    ab_ideal_ranks,
    ab_order,
    action_compare_k,
    to_dot,
    validate_graph,
)
from cstarcalc.indices import (
    IndexTable,
    WindowJump,
    cohomology_ranks,
    critical_times,
    csr_index_shortcut,
    floer_ranks,
    index_at,
    index_table,
    lambda_alpha,
    maslov,
    morse_bott_index,
    outer_periods,
    p_stable_period,
    window_jump,
)
from cstarcalc.manifold import (
    Component,
    ManifoldData,
    ManifoldError,
    builtin_fixture,
    parse_manifold,
    serialize_manifold,
    validate,
)
from cstarcalc.numerics import IntervalSpec, Side, Slope, c_count, n_count, w_at, w_index
from cstarcalc.qalg import (
    AlgebraError,
    FracT,
    GradedAlgebra,
    PolyT,
    Subspace,
    cup_ideal_check,
    generalized_zero_eigenspace,
    ini_specialize,
    kernel_power,
    mult_matrix,
    parse_algebra,
    serialize_algebra,
    sh_rank,
    stabilization_index,
    validate_algebra,
)
from cstarcalc.ssapprox import E1Approx, approximate_e1

__version__ = "0.1.0"

__all__ = [
    "ALGEBRA_NAMES",
    "AlgebraError",
    "BoundReport",
    "BoundsError",
    "Component",
    "E1Approx",
    "FamilyHomologyBounds",
    "Finding",
    "FracT",
    "GradedAlgebra",
    "IndexTable",
    "IntervalSpec",
    "MANIFOLD_NAMES",
    "ManifoldData",
    "ManifoldError",
    "PolyT",
    "Side",
    "Slope",
    "Subspace",
    "WindowJump",
    "__version__",
    "ab_ideal_ranks",
    "ab_order",
    "action_compare_k",
    "all_ok",
    "approximate_e1",
    "bound_report",
    "builtin_algebra",
    "builtin_fixture",
    "c_count",
    "cohomology_ranks",
    "critical_times",
    "csr_index_shortcut",
    "cup_ideal_check",
    "delta_at",
    "delta_polyline",
    "delta_ranks",
    "failures",
    "family_homology_bounds",
    "floer_ranks",
    "generalized_zero_eigenspace",
    "index_at",
    "index_table",
    "ini_specialize",
    "kernel_power",
    "lambda_alpha",
    "make_okm",
    "maslov",
    "morse_bott_index",
    "mult_matrix",
    "n_count",
    "outer_periods",
    "p_stable_period",
    "parse_algebra",
    "parse_manifold",
    "serialize_algebra",
    "serialize_manifold",
    "sh_rank",
    "stabilization_index",
    "to_dot",
    "validate",
    "validate_algebra",
    "validate_graph",
    "w_at",
    "w_index",
    "window_jump",
]
