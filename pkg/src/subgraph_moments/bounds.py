"""Certified bounds on the support extremes of M_c.

``support_bounds`` gives cheap integer caps ell* <= l(c) and u(c) <= u*.
Feeding them, with the exact moments, into the second-order Frechet and
Bhatia-Davis inequalities yields a lower bound on the size of the densest
c-vertex induced subgraph and an upper bound on the sparsest one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InconsistentBoundsError, UndefinedBoundError, ValidationError
from .moments import MomentSummary
from .stats import GraphStats

__all__ = [
    "DensityBounds",
    "DominanceReport",
    "SupportBounds",
    "bhatia_davis_bounds",
    "bhatia_davis_densest_raw",
    "dominance_report",
    "frechet_closed_form",
    "frechet_densest_lower",
    "frechet_raw",
    "support_bounds",
    "triangle_free_consistency",
]


@dataclass(frozen=True)
class SupportBounds:
    c: int
    ell_star: int
    u_star: int
    gamma_c: int
    motzkin_straus: Fraction


@dataclass(frozen=True)
class DensityBounds:
    """Integer bounds plus the un-rounded rationals they came from."""

    c: int
    frechet_lower: int | None
    bd_densest_lower: int
    bd_sparsest_upper: int
    frechet_raw: Fraction | None = None
    bd_densest_raw: Fraction | None = None
    bd_sparsest_raw: Fraction | None = None
    warnings: tuple[str, ...] = field(default=())


@dataclass(frozen=True)
class DominanceReport:
    frechet: Fraction
    bhatia_davis: Fraction
    dominant: str  # "equal", "bhatia_davis" or "frechet"


def support_bounds(stats: GraphStats, c: int, ell_star: int | None = None,
                   u_star: int | None = None) -> SupportBounds:
    """Default caps from alpha/omega upper bounds; callers may pass tighter ones.

    Overrides are trusted to be certified (ell* <= l(c), u(c) <= u*); only
    their range is checked here.
    """
    if not 2 <= c <= stats.n:
        raise ValidationError(f"c must satisfy 2 <= c <= n={stats.n}, got c={c}")
    top = c * (c - 1) // 2
    gamma_c = (c // 2) * ((c + 1) // 2) if stats.is_bipartite else top
    ms = Fraction(c * c, 2) * (1 - Fraction(1, stats.omega_upper))
    if ell_star is None:
        ell_star = max(0, c - stats.alpha_upper)
    if u_star is None:
        u_star = min(gamma_c, math.floor(ms))
    if ell_star < 0 or u_star > top:
        raise ValidationError(f"overrides must satisfy 0 <= ell* and u* <= {top}")
    if ell_star > u_star:
        raise InconsistentBoundsError(f"ell*={ell_star} exceeds u*={u_star}")
    return SupportBounds(c=c, ell_star=ell_star, u_star=u_star, gamma_c=gamma_c,
                         motzkin_straus=ms)


def frechet_raw(mom: MomentSummary) -> Fraction:
    """2 S2 / S1 + 1, a lower bound on u(c)."""
    if mom.s1 == 0:
        raise UndefinedBoundError("S1 = 0; Frechet bound undefined")
    return 2 * mom.s2 / mom.s1 + 1


def frechet_densest_lower(mom: MomentSummary) -> int:
    return math.ceil(frechet_raw(mom))


def frechet_closed_form(stats: GraphStats, c: int) -> Fraction:
    """The Frechet bound written out in terms of n, m and D2 (n >= 4, m >= 1)."""
    n, m, d2 = stats.n, stats.m, stats.d2
    if n < 4 or m < 1:
        raise ValidationError("closed form needs n >= 4 and m >= 1")
    w = Fraction(n - c, n - 3)
    return Fraction(c - 2, n - 2) * (w * Fraction(d2, m) + (1 - w) * (m - 1)) + 1


def bhatia_davis_densest_raw(mom: MomentSummary, ell_star: int) -> Fraction | None:
    """S1 + sigma^2 / (S1 - ell*), or None when S1 == ell* (M_c constant)."""
    if ell_star > mom.s1:
        raise InconsistentBoundsError(f"ell*={ell_star} exceeds S1={mom.s1}")
    if ell_star == mom.s1:
        return None
    return mom.s1 + mom.sigma2 / (mom.s1 - ell_star)


def bhatia_davis_bounds(mom: MomentSummary, sb: SupportBounds) -> DensityBounds:
    """Densest lower / sparsest upper bounds from ell*, u* and the moments."""
    if sb.u_star < mom.s1:
        raise InconsistentBoundsError(f"u*={sb.u_star} is below S1={mom.s1}")
    warnings = []
    bd_dense = bhatia_davis_densest_raw(mom, sb.ell_star)
    if bd_dense is None:
        warnings.append("S1 = ell*; Bhatia-Davis densest branch skipped")

    if mom.s1 == 0:
        fre = None
        densest = 0
        warnings.append("S1 = 0; Frechet bound undefined; u(c) >= 0 reported")
    else:
        fre = frechet_raw(mom)
        branches = [fre] if bd_dense is None else [fre, bd_dense]
        densest = math.ceil(min(branches))

    if sb.u_star > mom.s1:
        sparse_raw = mom.s1 - mom.sigma2 / (sb.u_star - mom.s1)
    else:
        # u* == S1 forces M_c to be the constant S1.
        if mom.s1.denominator != 1:
            raise InconsistentBoundsError(f"u* = S1 = {mom.s1} is not an integer")
        sparse_raw = mom.s1
        warnings.append("u* = S1; M_c is constant")
    return DensityBounds(
        c=mom.c,
        frechet_lower=None if fre is None else math.ceil(fre),
        bd_densest_lower=densest,
        bd_sparsest_upper=math.floor(sparse_raw),
        frechet_raw=fre,
        bd_densest_raw=bd_dense,
        bd_sparsest_raw=sparse_raw,
        warnings=tuple(warnings),
    )


def dominance_report(mom: MomentSummary, sb: SupportBounds) -> DominanceReport:
    """Compare the two un-rounded lower bounds on u(c)."""
    fre = frechet_raw(mom)
    bd = bhatia_davis_densest_raw(mom, sb.ell_star)
    if bd is None:
        bd = fre
    if bd == fre:
        dominant = "equal"
    elif bd > fre:
        dominant = "bhatia_davis"
    else:
        dominant = "frechet"
    return DominanceReport(frechet=fre, bhatia_davis=bd, dominant=dominant)


def triangle_free_consistency(stats: GraphStats) -> bool:
    """D2 <= (n - 2) m.  Every triangle-free graph passes; the converse fails."""
    return stats.d2 <= (stats.n - 2) * stats.m
