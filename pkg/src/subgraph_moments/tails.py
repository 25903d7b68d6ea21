"""Tail bounds on M_c, trivial-subgraph counts and a hyper-density test.

All bounds are exact rationals computed from S1, S2 of the graph and of its
complement.  Lower bounds (Chung-Erdos, Petrov) bound P(M_c >= t) from
below; the factorial-moment, Markov, Cantelli and complement-Petrov bounds
bound it from above.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import comb

import numpy as np

from .errors import OutOfRangeError, ValidationError
from .graph import Graph
from .moments import MomentSummary, binomial_moments, complement_moments
from .stats import GraphStats, compute_stats, is_tree

__all__ = [
    "CountBound",
    "CountKind",
    "SignificanceResult",
    "TailReport",
    "TreeAggregate",
    "cantelli_upper",
    "chung_erdos_lower",
    "combined_upper_tail",
    "complement_petrov_upper",
    "count_bound",
    "factorial_upper",
    "hypo_density_test",
    "induced_edge_count",
    "markov_upper",
    "petrov_lower",
    "printed_variants",
    "significance_test",
    "tree_aggregate_bounds",
]

ONE = Fraction(1)
ZERO = Fraction(0)


def _clamp(x: Fraction) -> Fraction:
    return min(ONE, max(ZERO, x))


def chung_erdos_lower(mom: MomentSummary) -> Fraction:
    """S1^2 / (2 S2 + S1) <= P(M_c >= 1); zero for an edgeless graph."""
    if mom.mu2 == 0:
        return ZERO
    return mom.s1 * mom.s1 / mom.mu2


def petrov_lower(mom: MomentSummary, t: int) -> Fraction:
    """(S1 - t + 1)^2 / (2 S2 + S1) <= P(M_c >= t), for 1 <= t <= S1."""
    if mom.mu2 == 0 or not 1 <= t <= mom.s1:
        raise OutOfRangeError(f"Petrov bound needs 1 <= t <= S1={mom.s1}, got t={t}")
    return (mom.s1 - t + 1) ** 2 / mom.mu2


def markov_upper(mom: MomentSummary, t: int) -> Fraction:
    if t < 1:
        raise OutOfRangeError(f"Markov bound needs t >= 1, got t={t}")
    return min(ONE, mom.s1 / t)


def factorial_upper(mom: MomentSummary, t: int) -> Fraction:
    """min(1, 2 S2 / t(t-1)); at t = 1 falls back to Markov's S1 / t."""
    if t < 1:
        raise OutOfRangeError(f"factorial-moment bound needs t >= 1, got t={t}")
    if t == 1:
        return markov_upper(mom, 1)
    return min(ONE, 2 * mom.s2 / (t * (t - 1)))


def cantelli_upper(mom: MomentSummary, t: Fraction | int) -> Fraction:
    """One-sided Chebyshev: 1 / (xi^2 + 1) with xi^2 = (S1 - t)^2 / sigma^2."""
    if t <= mom.s1:
        return ONE
    if mom.sigma2 == 0:
        return ZERO
    return mom.sigma2 / (mom.sigma2 + (t - mom.s1) ** 2)


def complement_petrov_upper(mom: MomentSummary, comp: MomentSummary, c: int,
                            t: int) -> Fraction:
    """Upper bound on P(M_c(G) >= t) from Petrov applied to the complement.

    M_c(G) + M_c(complement) = c(c-1)/2, so {M_c(G) >= t} is the complement
    of {M_c(complement) >= c(c-1)/2 - t + 1}, whose Petrov lower bound has
    numerator (t - S1)^2.
    """
    top = c * (c - 1) // 2
    if comp.mu2 == 0 or not mom.s1 + 1 <= t <= top:
        raise OutOfRangeError(
            f"complement Petrov bound needs S1 + 1 <= t <= {top} and a non-empty complement")
    return _clamp(1 - (t - mom.s1) ** 2 / comp.mu2)


def printed_variants(mom: MomentSummary, comp: MomentSummary, t: int) -> dict[str, Fraction | None]:
    """Alternative constants as typeset in the source display; not certified.

    Kept for side-by-side inspection only: the factorial term with S2 in
    place of 2 S2, and the complement term with numerator (S1 - t + 1)^2.
    """
    out: dict[str, Fraction | None] = {"factorial_s2": None, "complement_shifted": None}
    if t >= 2:
        out["factorial_s2"] = mom.s2 / (t * (t - 1))
    if comp.mu2 != 0:
        out["complement_shifted"] = 1 - (mom.s1 - t + 1) ** 2 / comp.mu2
    return out


@dataclass(frozen=True)
class TailReport:
    """Every applicable bound on P(M_c >= t); ``None`` marks an absent term."""

    c: int
    t: int
    chung_erdos_lb: Fraction
    petrov_lb: Fraction | None
    factorial_ub: Fraction | None
    markov_ub: Fraction | None
    cantelli_ub: Fraction
    complement_ub: Fraction | None
    combined_ub: Fraction
    notes: tuple[str, ...] = field(default=())


def _tail_report(mom: MomentSummary, comp: MomentSummary, c: int, t: int) -> TailReport:
    notes = []
    petrov = factorial = markov = complement = None
    if mom.mu2 != 0 and 1 <= t <= mom.s1:
        petrov = petrov_lower(mom, t)
    if t >= 1:
        factorial = factorial_upper(mom, t)
        markov = markov_upper(mom, t)
        if t == 1:
            notes.append("t = 1: factorial-moment term degenerates; first-order Markov used")
    if comp.mu2 != 0 and mom.s1 + 1 <= t <= c * (c - 1) // 2:
        complement = complement_petrov_upper(mom, comp, c, t)
    cantelli = cantelli_upper(mom, t)
    if t == 0:
        combined = ONE
    else:
        combined = min(x for x in (ONE, factorial, markov, cantelli, complement)
                       if x is not None)
    return TailReport(c=c, t=t, chung_erdos_lb=chung_erdos_lower(mom), petrov_lb=petrov,
                      factorial_ub=factorial, markov_ub=markov, cantelli_ub=cantelli,
                      complement_ub=complement, combined_ub=combined, notes=tuple(notes))


def combined_upper_tail(stats: GraphStats, c: int, t: int) -> TailReport:
    """All tail bounds at threshold t, with their minimum as ``combined_ub``."""
    top = c * (c - 1) // 2
    if not 0 <= t <= top:
        raise OutOfRangeError(f"t must satisfy 0 <= t <= {top}, got t={t}")
    return _tail_report(binomial_moments(stats, c), complement_moments(stats, c), c, t)


# --------------------------------------------------------------------------
# Counting trivial subgraphs
# --------------------------------------------------------------------------

class CountKind(str, Enum):
    INDEPENDENT_SETS = "independent_sets"
    CLIQUES = "cliques"
    SUBTREES = "subtrees"
    BALANCED_BICLIQUES = "balanced_bicliques"


@dataclass(frozen=True)
class CountBound:
    c: int
    kind: CountKind
    bound: Fraction
    binomial_total: int


def count_bound(g: Graph, c: int, kind: CountKind | str,
                stats: GraphStats | None = None) -> CountBound:
    """Upper bound on the number of c-vertex induced subgraphs of a given kind.

    Independent sets use 1 - Chung-Erdos on P(M_c = 0); the other kinds use
    the combined upper tail at the kind's maximal size (cliques c(c-1)/2,
    subtrees of a tree c-1, balanced bicliques of a bipartite graph c^2/4).
    """
    kind = CountKind(kind)
    stats = stats or compute_stats(g)
    if not 2 <= c <= stats.n:
        raise ValidationError(f"c must satisfy 2 <= c <= n={stats.n}, got c={c}")
    total = comb(stats.n, c)
    mom = binomial_moments(stats, c)
    if kind is CountKind.INDEPENDENT_SETS:
        return CountBound(c, kind, total * (1 - chung_erdos_lower(mom)), total)
    if kind is CountKind.CLIQUES:
        t = c * (c - 1) // 2
    elif kind is CountKind.SUBTREES:
        if not is_tree(g):
            raise ValidationError("subtree counts need the graph to be a tree")
        t = c - 1
    else:
        if not stats.is_bipartite or c % 2:
            raise ValidationError("balanced bicliques need a bipartite graph and even c")
        t = c * c // 4
    report = _tail_report(mom, complement_moments(stats, c), c, t)
    return CountBound(c, kind, total * report.combined_ub, total)


@dataclass(frozen=True)
class TreeAggregate:
    independent_sets_total: Fraction
    subtrees_total: Fraction


def tree_aggregate_bounds(g: Graph) -> TreeAggregate:
    """Totals over all orders: 1 + n + sum_c i(c, 0) and n + sum_c i(c, c-1).

    The n + 1 independent sets of size < 2 and the n one-vertex subtrees are
    counted exactly; a tree has no independent set of all n vertices.
    """
    if not is_tree(g):
        raise ValidationError("tree aggregates need the graph to be a tree")
    stats = compute_stats(g)
    n = g.n
    indep = Fraction(1 + n)
    for c in range(2, n):
        indep += count_bound(g, c, CountKind.INDEPENDENT_SETS, stats).bound
    subtrees = Fraction(n)
    for c in range(2, n + 1):
        subtrees += count_bound(g, c, CountKind.SUBTREES, stats).bound
    return TreeAggregate(independent_sets_total=indep, subtrees_total=subtrees)


# --------------------------------------------------------------------------
# Community significance
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SignificanceResult:
    c: int
    m_C: int
    s1: Fraction
    tail_bound: Fraction
    significant: bool


def _resolve_community(g: Graph, community: Iterable[str | int]) -> list[int]:
    idx = [g.index_of(v) for v in community]
    if len(set(idx)) != len(idx):
        raise ValidationError("community lists a vertex more than once")
    if len(idx) < 2:
        raise ValidationError("community needs at least 2 vertices")
    return idx


def induced_edge_count(g: Graph, vertices: Iterable[int]) -> int:
    inside = np.zeros(g.n, dtype=bool)
    vs = list(vertices)
    inside[vs] = True
    return int(sum(int(inside[g.neighbors(v)].sum()) for v in vs)) // 2


def _as_level(alpha: Fraction | float | str) -> Fraction:
    level = alpha if isinstance(alpha, Fraction) else Fraction(str(alpha))
    if not 0 < level < 1:
        raise ValidationError(f"alpha must lie in (0, 1), got {alpha}")
    return level


def _decide(stats: GraphStats, c: int, m_c: int, level: Fraction) -> SignificanceResult:
    report = combined_upper_tail(stats, c, m_c)
    return SignificanceResult(c=c, m_C=m_c, s1=binomial_moments(stats, c).s1,
                              tail_bound=report.combined_ub,
                              significant=report.combined_ub <= level)


def significance_test(g: Graph, community: Iterable[str | int],
                      alpha: Fraction | float | str,
                      stats: GraphStats | None = None) -> SignificanceResult:
    """Declare the community hyper-dense at level alpha when a certified
    upper bound on P(M_c >= m_C) is at most alpha."""
    level = _as_level(alpha)
    idx = _resolve_community(g, community)
    stats = stats or compute_stats(g)
    return _decide(stats, len(idx), induced_edge_count(g, idx), level)


def hypo_density_test(g: Graph, community: Iterable[str | int],
                      alpha: Fraction | float | str,
                      stats: GraphStats | None = None) -> SignificanceResult:
    """The same test run on the complement graph.

    A community that is unusually sparse in G is unusually dense in the
    complement; ``tail_bound`` here bounds P(M_c(G) <= m_C(G)).
    """
    level = _as_level(alpha)
    idx = _resolve_community(g, community)
    stats = stats or compute_stats(g)
    c = len(idx)
    m_comp = c * (c - 1) // 2 - induced_edge_count(g, idx)
    return _decide(stats.complement(), c, m_comp, level)
