"""Exact first and second binomial moments of the induced-subgraph size.

For a uniformly random c-subset U of the vertices, let M be the number of
edges with both ends in U.  Writing x^(k) for the falling factorial, each
edge survives with probability c^(2)/n^(2), two edges sharing a vertex with
probability c^(3)/n^(3), and two disjoint edges with c^(4)/n^(4).  Summing
over edges and edge pairs gives S1 = E[M] and S2 = E[M(M-1)]/2 from m and
D2 alone, so the whole computation is linear in the size of the graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError
from .stats import GraphStats

__all__ = [
    "MomentSummary",
    "binomial_moments",
    "complement_moments",
    "falling_factorial",
    "moments_from_counts",
    "pair_count_moments",
]


def falling_factorial(t: int, s: int) -> int:
    """t(t-1)...(t-s+1); zero when s > t, one when s == 0."""
    if s < 0 or t < 0:
        raise ValidationError("falling_factorial needs t >= 0 and s >= 0")
    if s > t:
        return 0
    out = 1
    for k in range(t - s + 1, t + 1):
        out *= k
    return out


@dataclass(frozen=True)
class MomentSummary:
    """S1 = E[M], S2 = E[M(M-1)]/2, mu2 = E[M^2] and the variance, exactly."""

    c: int
    s1: Fraction
    s2: Fraction
    mu2: Fraction
    sigma2: Fraction

    @classmethod
    def from_binomial(cls, c: int, s1: Fraction, s2: Fraction) -> MomentSummary:
        return cls(c=c, s1=s1, s2=s2, mu2=2 * s2 + s1, sigma2=2 * s2 - s1 * (s1 - 1))


def _inclusion(c: int, n: int, k: int) -> Fraction:
    # Probability that k fixed vertices all land in a random c-subset.
    num = falling_factorial(c, k)
    return Fraction(num, falling_factorial(n, k)) if num else Fraction(0)


def _check_c(n: int, c: int) -> None:
    if n < 2:
        raise ValidationError(f"moments need n >= 2, got n={n}")
    if not 2 <= c <= n:
        raise ValidationError(f"c must satisfy 2 <= c <= n={n}, got c={c}")


def pair_count_moments(n: int, m: int, d2: int, c: int) -> MomentSummary:
    """Moments from the edge-pair count: valid for every n >= 2.

    Adjacent edge pairs number D2/2, disjoint pairs m(m-1)/2 - D2/2.
    """
    _check_c(n, c)
    s1 = _inclusion(c, n, 2) * m
    adjacent = d2 // 2
    disjoint = m * (m - 1) // 2 - adjacent
    s2 = _inclusion(c, n, 3) * adjacent + _inclusion(c, n, 4) * disjoint
    return MomentSummary.from_binomial(c, s1, s2)


def moments_from_counts(n: int, m: int, d2: int, c: int) -> MomentSummary:
    """Moments of M_c for a graph with n vertices, m edges and the given D2."""
    _check_c(n, c)
    if n < 4:
        # The packaged closed form divides by n - 3.
        return pair_count_moments(n, m, d2, c)
    s1 = Fraction(falling_factorial(c, 2) * m, falling_factorial(n, 2))
    bracket = Fraction((n - c) * d2 + (c - 3) * m * (m - 1), n - 3)
    two_s2 = Fraction(falling_factorial(c, 3), falling_factorial(n, 3)) * bracket
    return MomentSummary.from_binomial(c, s1, two_s2 / 2)


def binomial_moments(stats: GraphStats, c: int) -> MomentSummary:
    return moments_from_counts(stats.n, stats.m, stats.d2, c)


def complement_moments(stats: GraphStats, c: int) -> MomentSummary:
    """Moments of M_c on the complement graph, from degree data only."""
    return moments_from_counts(stats.n, stats.comp_m, stats.comp_d2, c)
