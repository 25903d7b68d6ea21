"""Brute-force ground truth for small graphs.

Every routine here enumerates vertex subsets explicitly and never touches
the closed-form moment formulas, so it can be used to check them.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .errors import BudgetExceededError, ValidationError
from .graph import Graph
from .stats import is_bipartite, is_tree

__all__ = [
    "DEFAULT_BUDGET",
    "ExactDistribution",
    "ExactSummary",
    "TrivialCounts",
    "all_graphs",
    "batch_subset_sizes",
    "clique_number",
    "count_independent_sets",
    "count_subtrees",
    "exact_distribution",
    "exact_summary",
    "exact_trivial_counts",
    "family_distribution",
    "independence_number",
    "multinomial",
]

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class ExactDistribution:
    """Counts i_G(c, k) of c-subsets inducing exactly k edges."""

    c: int
    counts: dict[int, int]
    total: int

    def probability(self, k: int) -> Fraction:
        return Fraction(self.counts.get(k, 0), self.total)

    def tail(self, t: int) -> Fraction:
        """P(M_c >= t)."""
        return Fraction(sum(v for k, v in self.counts.items() if k >= t), self.total)

    def lower_tail(self, t: int) -> Fraction:
        """P(M_c <= t)."""
        return Fraction(sum(v for k, v in self.counts.items() if k <= t), self.total)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(k for k, v in self.counts.items() if v))

    def to_json(self) -> dict:
        return {
            "c": self.c,
            "total": str(self.total),
            "counts": {str(k): str(v) for k, v in sorted(self.counts.items())},
        }


@dataclass(frozen=True)
class ExactSummary:
    ell: int
    u: int
    s1: Fraction
    s2: Fraction
    mu2: Fraction
    sigma2: Fraction
    i_at_ell: int
    i_at_u: int
    support_size: int


@dataclass(frozen=True)
class TrivialCounts:
    independent_sets: int
    cliques: int
    subtrees: int | None = None
    balanced_bicliques: int | None = None


def _count_from(bits: list[int], n: int, c: int, first: int) -> list[int]:
    """Size histogram over c-subsets whose smallest vertex is ``first``."""
    counts = [0] * (c * (c - 1) // 2 + 1)

    def rec(start: int, depth: int, mask: int, e: int) -> None:
        last = n - (c - depth)
        if depth == c - 1:
            for v in range(start, last + 1):
                counts[e + (bits[v] & mask).bit_count()] += 1
            return
        for v in range(start, last + 1):
            rec(v + 1, depth + 1, mask | (1 << v), e + (bits[v] & mask).bit_count())

    if c == 1:
        counts[0] = 1
    else:
        rec(first + 1, 1, 1 << first, 0)
    return counts


def _count_range(args: tuple[list[int], int, int, range]) -> list[int]:
    bits, n, c, firsts = args
    acc = [0] * (c * (c - 1) // 2 + 1)
    for first in firsts:
        for k, v in enumerate(_count_from(bits, n, c, first)):
            acc[k] += v
    return acc


def exact_distribution(g: Graph, c: int, budget: int = DEFAULT_BUDGET,
                       workers: int = 1) -> ExactDistribution:
    """Enumerate every c-subset once and histogram the induced edge counts.

    Subsets are visited in lexicographic order, adding one vertex at a time
    and updating the edge count with a bitset popcount.  With ``workers > 1``
    the subsets are split by smallest vertex and merged by addition, which
    gives the same histogram as a sequential run.
    """
    n = g.n
    if not 0 <= c <= n:
        raise ValidationError(f"c must satisfy 0 <= c <= n={n}, got c={c}")
    total = comb(n, c)
    if total > budget:
        raise BudgetExceededError(total, budget)
    if c == 0:
        return ExactDistribution(0, {0: 1}, 1)
    bits = g.bitsets()
    firsts = range(n - c + 1)
    if workers > 1 and len(firsts) > 1:
        chunks = [range(i, len(firsts), workers) for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_count_range, [(bits, n, c, ch) for ch in chunks]))
        hist = [sum(col) for col in zip(*parts)]
    else:
        hist = _count_range((bits, n, c, firsts))
    counts = {k: v for k, v in enumerate(hist) if v}
    assert sum(counts.values()) == total
    return ExactDistribution(c, counts, total)


def exact_summary(dist: ExactDistribution) -> ExactSummary:
    support = dist.support
    total = dist.total
    s1 = Fraction(sum(k * v for k, v in dist.counts.items()), total)
    s2 = Fraction(sum(k * (k - 1) * v for k, v in dist.counts.items()), 2 * total)
    return ExactSummary(
        ell=support[0],
        u=support[-1],
        s1=s1,
        s2=s2,
        mu2=2 * s2 + s1,
        sigma2=2 * s2 - s1 * (s1 - 1),
        i_at_ell=dist.counts[support[0]],
        i_at_u=dist.counts[support[-1]],
        support_size=len(support),
    )


def multinomial(d: int, *parts: int) -> int:
    """d! / (parts[0]! parts[1]! ...) with sum(parts) == d; zero if any part < 0."""
    if any(p < 0 for p in parts) or sum(parts) != d:
        return 0
    out = 1
    left = d
    for p in parts:
        out *= comb(left, p)
        left -= p
    return out


def family_distribution(family: str, params: tuple[int, ...] | int, c: int) -> ExactDistribution:
    """Closed-form size distributions for the standard families."""
    if isinstance(params, int):
        params = (params,)
    counts: dict[int, int] = {}

    def add(k: int, v: int) -> None:
        if v:
            counts[k] = counts.get(k, 0) + v

    if family == "complete":
        (n,) = params
        add(c * (c - 1) // 2, comb(n, c))
    elif family == "star":
        (n,) = params
        add(0, comb(n - 1, c))
        add(c - 1, comb(n - 1, c - 1))
    elif family in ("complete_bipartite_balanced", "complete_bipartite"):
        if family == "complete_bipartite" and (len(params) != 2 or params[0] != params[1]):
            raise ValidationError("closed form needs a balanced K_{d,d}")
        d = params[0]
        n = 2 * d
        for s in range(c // 2 + 1):
            t = c - s
            # s == t picks the same vertex sets from either side: count once.
            weight = 1 if s == t else 2
            add(s * t, weight * comb(d, s) * comb(d, t))
    elif family == "matching":
        (d,) = params
        n = 2 * d
        for k in range(c // 2 + 1):
            add(k, multinomial(d, k, c - 2 * k, d - c + k) * 2 ** (c - 2 * k))
    else:
        raise ValidationError(f"no closed form for family {family!r}")
    if family in ("complete", "star"):
        n = params[0]
    if not 0 <= c <= n:
        raise ValidationError(f"c must satisfy 0 <= c <= n={n}, got c={c}")
    return ExactDistribution(c, counts, comb(n, c))


def exact_trivial_counts(g: Graph, c: int, budget: int = DEFAULT_BUDGET) -> TrivialCounts:
    """Independent sets, cliques and (where meaningful) subtrees / bicliques of order c.

    Subtrees are read at k = c - 1 only for trees, where any c-subset with
    c - 1 induced edges is acyclic and hence connected.  Balanced bicliques
    are read at k = c^2/4 for bipartite graphs and even c.
    """
    dist = exact_distribution(g, c, budget)
    return TrivialCounts(
        independent_sets=dist.counts.get(0, 0),
        cliques=dist.counts.get(c * (c - 1) // 2, 0),
        subtrees=dist.counts.get(c - 1, 0) if is_tree(g) else None,
        balanced_bicliques=(dist.counts.get(c * c // 4, 0)
                            if is_bipartite(g) and c % 2 == 0 else None),
    )


# --------------------------------------------------------------------------
# Exhaustive helpers for small graphs
# --------------------------------------------------------------------------

def _max_clique_size(bits: list[int], cand: int) -> int:
    if not cand:
        return 0
    best = 0
    while cand:
        v = cand.bit_length() - 1
        cand &= ~(1 << v)
        if 1 + cand.bit_count() <= best:
            break
        best = max(best, 1 + _max_clique_size(bits, cand & bits[v]))
    return best


def clique_number(g: Graph) -> int:
    return _max_clique_size(g.bitsets(), (1 << g.n) - 1)


def independence_number(g: Graph) -> int:
    full = (1 << g.n) - 1
    comp = [full & ~b & ~(1 << v) for v, b in enumerate(g.bitsets())]
    return _max_clique_size(comp, full)


def _subsets_by_edges(g: Graph) -> tuple[list[int], list[int]]:
    # edges[mask] via the lowest-bit recurrence over all 2^n subsets.
    bits = g.bitsets()
    size = 1 << g.n
    edges = [0] * size
    for mask in range(1, size):
        low = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        edges[mask] = edges[rest] + (bits[low] & rest).bit_count()
    return edges, bits


def count_independent_sets(g: Graph) -> int:
    """All independent sets, the empty set included."""
    edges, _ = _subsets_by_edges(g)
    return sum(1 for e in edges if e == 0)


def _connected(bits: list[int], mask: int) -> bool:
    if not mask:
        return False
    seen = mask & -mask
    frontier = seen
    while frontier:
        v = frontier.bit_length() - 1
        frontier &= ~(1 << v)
        new = bits[v] & mask & ~seen
        seen |= new
        frontier |= new
    return seen == mask


def count_subtrees(g: Graph) -> int:
    """Non-empty vertex subsets whose induced subgraph is a tree."""
    edges, bits = _subsets_by_edges(g)
    return sum(1 for mask in range(1, 1 << g.n)
               if edges[mask] == mask.bit_count() - 1 and _connected(bits, mask))


def all_graphs(n: int) -> Iterator[Graph]:
    """Every labelled graph on n vertices (2^(n choose 2) of them)."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


def batch_subset_sizes(n: int, edge_sets: np.ndarray) -> np.ndarray:
    """Induced edge counts of all 2^n vertex subsets, for a batch of graphs.

    ``edge_sets`` is a ``(B, n(n-1)/2)`` 0/1 matrix indexed like
    ``itertools.combinations(range(n), 2)``.  Returns a ``(B, 2^n)`` array
    whose column ``mask`` is the edge count induced by that subset.
    """
    pairs = list(itertools.combinations(range(n), 2))
    masks = np.arange(1 << n)
    contains = np.stack([((masks >> u) & 1) & ((masks >> v) & 1) for u, v in pairs],
                        axis=1) if pairs else np.zeros((1 << n, 0), dtype=np.int64)
    return np.asarray(edge_sets, dtype=np.int64) @ contains.T.astype(np.int64)
