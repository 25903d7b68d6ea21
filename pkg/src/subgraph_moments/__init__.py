"""Exact moments of random induced subgraph sizes, with certified bounds.

For a graph G and an order c, M_c(G) is the number of edges induced by a
uniformly random set of c vertices.  Its first two binomial moments depend
only on n, m and the degree statistic D2, so they are computed exactly in
linear time and then fed into classical inequalities to bound the densest
and sparsest c-vertex subgraphs, tail probabilities and trivial-subgraph
counts.
"""

__version__ = "0.1.0"

from .bounds import (
    DensityBounds,
    DominanceReport,
    SupportBounds,
    bhatia_davis_bounds,
    dominance_report,
    frechet_closed_form,
    frechet_densest_lower,
    support_bounds,
    triangle_free_consistency,
)
from .errors import (
    BudgetExceededError,
    InconsistentBoundsError,
    MismatchError,
    OutOfRangeError,
    ParseError,
    SubgraphMomentsError,
    UndefinedBoundError,
    ValidationError,
)
from .graph import Family, Graph, generate, parse_edge_list, serialize
from .moments import MomentSummary, binomial_moments, complement_moments, moments_from_counts
from .oracle import ExactDistribution, exact_distribution, exact_summary, family_distribution
from .stats import GraphStats, compute_stats
from .tails import (
    CountKind,
    TailReport,
    combined_upper_tail,
    count_bound,
    hypo_density_test,
    significance_test,
    tree_aggregate_bounds,
)

__all__ = [
    "BudgetExceededError",
    "CountKind",
    "DensityBounds",
    "DominanceReport",
    "ExactDistribution",
    "Family",
    "Graph",
    "GraphStats",
    "InconsistentBoundsError",
    "MismatchError",
    "MomentSummary",
    "OutOfRangeError",
    "ParseError",
    "SubgraphMomentsError",
    "SupportBounds",
    "TailReport",
    "UndefinedBoundError",
    "ValidationError",
    "bhatia_davis_bounds",
    "binomial_moments",
    "combined_upper_tail",
    "complement_moments",
    "compute_stats",
    "count_bound",
    "dominance_report",
    "exact_distribution",
    "exact_summary",
    "family_distribution",
    "frechet_closed_form",
    "frechet_densest_lower",
    "generate",
    "hypo_density_test",
    "moments_from_counts",
    "parse_edge_list",
    "serialize",
    "significance_test",
    "support_bounds",
    "tree_aggregate_bounds",
    "triangle_free_consistency",
]
