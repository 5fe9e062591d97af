"""Maximal arcs in PG(2,2^h) and partial flocks of the quadratic cone in PG(3,2^h).

The package builds Denniston and Mathon maximal arcs from conic data,
converts them to additive partial flocks of the quadratic cone both
algebraically and through an explicit projection-and-rewrite chain, and
solves the GF(2) trace-condition systems that produce degree-doubling
Mathon extensions of Denniston arcs.  Every construction is backed by
brute-force geometric verification oracles.
"""

from .finite_field import GF, least_irreducible, make_field
from .mathon_arcs import (
    ClosureError,
    Conic,
    DisjointnessError,
    MathonArc,
    MaximalArcReport,
    arc_from_json,
    arc_points,
    arc_to_json,
    close_set,
    compose,
    composition_trace,
    conic_points,
    conics_disjoint,
    denniston_arc,
    denniston_closure,
    is_denniston_type,
    synthetic_extension,
    verify_maximal_arc,
)
from .flocks import (
    FlockClassification,
    FlockReport,
    PartialFlock,
    additive_to_geometric,
    arc_to_flock,
    classify_flock,
    denniston_line,
    denniston_lines_concurrent,
    extend_flock,
    flock_from_json,
    flock_to_arc,
    flock_to_json,
    geometric_to_additive,
    plane_compose,
    project_arc,
    singular_plane,
    verify_partial_flock,
)
from .search import (
    GroupSpec,
    RankAnalysis,
    SearchRecord,
    TraceCondition,
    TraceConditionSystem,
    additive_subgroups_containing_one,
    build_trace_system,
    construct_extension_arc,
    guaranteed_degree,
    rank_analysis,
    search_field,
    search_group,
    solve_trace_system,
)

__version__ = "0.1.0"

__all__ = [
    "GF",
    "least_irreducible",
    "make_field",
    "ClosureError",
    "Conic",
    "DisjointnessError",
    "MathonArc",
    "MaximalArcReport",
    "arc_from_json",
    "arc_points",
    "arc_to_json",
    "close_set",
    "compose",
    "composition_trace",
    "conic_points",
    "conics_disjoint",
    "denniston_arc",
    "denniston_closure",
    "is_denniston_type",
    "synthetic_extension",
    "verify_maximal_arc",
    "FlockClassification",
    "FlockReport",
    "PartialFlock",
    "additive_to_geometric",
    "arc_to_flock",
    "classify_flock",
    "denniston_line",
    "denniston_lines_concurrent",
    "extend_flock",
    "flock_from_json",
    "flock_to_arc",
    "flock_to_json",
    "geometric_to_additive",
    "plane_compose",
    "project_arc",
    "singular_plane",
    "verify_partial_flock",
    "GroupSpec",
    "RankAnalysis",
    "SearchRecord",
    "TraceCondition",
    "TraceConditionSystem",
    "additive_subgroups_containing_one",
    "build_trace_system",
    "construct_extension_arc",
    "guaranteed_degree",
    "rank_analysis",
    "search_field",
    "search_group",
    "solve_trace_system",
    "__version__",
]
