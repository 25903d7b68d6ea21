"""Command-line interface.

Every command except ``gen`` prints one JSON envelope::

    {"command": ..., "input_digest": ..., "results": {...}, "warnings": [...]}

Rationals appear as ``{"exact": "p/q", "approx": <float>}``.  Exit codes:
0 success, 2 validation or parse error, 3 budget refusal, 4 formula/oracle
mismatch.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import sys
from decimal import ROUND_HALF_EVEN, Context, Decimal
from enum import Enum
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import bhatia_davis_bounds, dominance_report, support_bounds
from .errors import MismatchError, SubgraphMomentsError, ValidationError
from .graph import generate, parse_edge_list, serialize
from .moments import binomial_moments, complement_moments
from .oracle import DEFAULT_BUDGET, exact_distribution, exact_summary
from .stats import compute_stats, is_tree
from .tails import (
    CountKind,
    combined_upper_tail,
    count_bound,
    hypo_density_test,
    printed_variants,
    significance_test,
    tree_aggregate_bounds,
)

_DIGITS = 6


def render_rational(x: Fraction) -> dict:
    ctx = Context(prec=_DIGITS, rounding=ROUND_HALF_EVEN)
    approx = ctx.divide(Decimal(x.numerator), Decimal(x.denominator))
    return {"exact": str(x), "approx": float(approx)}


def to_jsonable(obj):
    if isinstance(obj, Fraction):
        return render_rational(obj)
    if isinstance(obj, Enum):
        return obj.value
    if dataclasses.is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return obj


def parse_c_range(spec: str, n: int) -> list[int]:
    """Accepts ``5``, ``2..6``, ``2-6``, ``2,4,7`` or ``all``."""
    spec = spec.strip()
    if spec == "all":
        return list(range(2, n + 1))
    try:
        if ".." in spec or ("-" in spec and not spec.startswith("-")):
            lo, hi = spec.replace("..", "-").split("-")
            values = list(range(int(lo), int(hi) + 1))
        else:
            values = [int(x) for x in spec.split(",")]
    except ValueError:
        raise ValidationError(f"cannot parse c range {spec!r}") from None
    for c in values:
        if not 2 <= c <= n:
            raise ValidationError(f"c={c} outside [2, {n}]")
    if not values:
        raise ValidationError(f"empty c range {spec!r}")
    return values


class _Input:
    def __init__(self, path: str):
        data = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
        self.digest = hashlib.sha256(data).hexdigest()
        self.graph = parse_edge_list(data)


def _read_input(path: str) -> _Input:
    try:
        return _Input(path)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None


def _stats_json(stats) -> dict:
    return dataclasses.asdict(stats)


# --------------------------------------------------------------------------
# Commands
# --------------------------------------------------------------------------

def cmd_moments(args):
    src = _read_input(args.input)
    stats = compute_stats(src.graph)
    cs = parse_c_range(args.c, stats.n)
    results = {
        "stats": _stats_json(stats),
        "moments": [binomial_moments(stats, c) for c in cs],
    }
    return src.digest, results, []


def cmd_bounds(args):
    src = _read_input(args.input)
    stats = compute_stats(src.graph)
    sb = support_bounds(stats, args.c, ell_star=args.ell, u_star=args.u)
    mom = binomial_moments(stats, args.c)
    db = bhatia_davis_bounds(mom, sb)
    dom = dominance_report(mom, sb) if mom.s1 > 0 else None
    results = {"stats": _stats_json(stats), "moments": mom, "support_bounds": sb,
               "density_bounds": db, "dominance": dom}
    return src.digest, results, list(db.warnings)


def cmd_tails(args):
    src = _read_input(args.input)
    stats = compute_stats(src.graph)
    if not 2 <= args.c <= stats.n:
        raise ValidationError(f"c must satisfy 2 <= c <= n={stats.n}, got c={args.c}")
    report = combined_upper_tail(stats, args.c, args.t)
    warnings = list(report.notes)
    results = {"moments": binomial_moments(stats, args.c), "tail": report}
    if args.diagnostics:
        results["printed_variants"] = printed_variants(
            binomial_moments(stats, args.c), complement_moments(stats, args.c), args.t)
        warnings.append("printed_variants use the typeset constants and are not certified bounds")
    return src.digest, results, warnings


def cmd_count(args):
    src = _read_input(args.input)
    g = src.graph
    stats = compute_stats(g)
    kind = CountKind(args.kind)
    if args.c is not None:
        cs = [args.c]
    elif kind is CountKind.BALANCED_BICLIQUES:
        cs = list(range(2, stats.n + 1, 2))
    else:
        cs = list(range(2, stats.n + 1))
    table = [count_bound(g, c, kind, stats) for c in cs]
    results = {"kind": kind.value, "per_c": table}
    warnings = []
    if is_tree(g) and kind in (CountKind.INDEPENDENT_SETS, CountKind.SUBTREES):
        agg = tree_aggregate_bounds(g)
        results["tree_aggregate"] = (agg.independent_sets_total
                                     if kind is CountKind.INDEPENDENT_SETS
                                     else agg.subtrees_total)
    return src.digest, results, warnings


def _read_community(args) -> list[str]:
    if args.community is not None:
        items = [x.strip() for x in args.community.split(",")]
    elif args.community_file is not None:
        try:
            text = Path(args.community_file).read_text()
        except OSError as exc:
            raise ValidationError(f"cannot read {args.community_file}: {exc.strerror}") from None
        items = [ln.strip() for ln in text.splitlines()]
    else:
        raise ValidationError("give --community or --community-file")
    return [x for x in items if x and not x.startswith("#")]


def cmd_significance(args):
    src = _read_input(args.input)
    g = src.graph
    stats = compute_stats(g)
    community = _read_community(args)
    hyper = significance_test(g, community, args.alpha, stats)
    hypo = hypo_density_test(g, community, args.alpha, stats)
    # P(M >= m_C) + P(M <= m_C) >= 1, so the two certified bounds must too.
    consistent = hyper.tail_bound + hypo.tail_bound >= 1
    warnings = []
    if not consistent:
        warnings.append("hyper- and hypo-density bounds sum below 1")
    results = {"hyper_density": hyper, "hypo_density_mirror": hypo, "consistent": consistent}
    return src.digest, results, warnings


def cmd_oracle(args):
    src = _read_input(args.input)
    g = src.graph
    stats = compute_stats(g)
    if not 2 <= args.c <= stats.n:
        raise ValidationError(f"c must satisfy 2 <= c <= n={stats.n}, got c={args.c}")
    dist = exact_distribution(g, args.c, budget=args.budget, workers=args.workers)
    summary = exact_summary(dist)
    formula = binomial_moments(stats, args.c)
    match = (summary.s1, summary.s2, summary.sigma2) == (formula.s1, formula.s2, formula.sigma2)
    results = {"distribution": dist.to_json(), "exact_summary": summary,
               "formula": formula, "match": match}
    return src.digest, results, []


def cmd_gen(args) -> int:
    g = generate(args.family, *args.params, seed=args.seed)
    text = serialize(g)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text)
    return 0


# --------------------------------------------------------------------------
# Output
# --------------------------------------------------------------------------

def _fmt(value) -> str:
    if isinstance(value, dict) and set(value) == {"exact", "approx"}:
        return value["exact"] if "/" not in value["exact"] else f"{value['exact']} (~{value['approx']:g})"
    return str(value)


def _pretty(envelope: dict) -> str:
    lines = [f"# {envelope['command']}  input sha256 {envelope['input_digest'][:16]}"]

    def walk(prefix: str, node) -> None:
        if isinstance(node, dict) and not set(node) == {"exact", "approx"}:
            for key in sorted(node):
                walk(f"{prefix}.{key}" if prefix else key, node[key])
        elif isinstance(node, list) and node and isinstance(node[0], dict):
            cols = list(node[0])
            rows = [[_fmt(row[c]) for c in cols] for row in node]
            widths = [max(len(c), *(len(r[i]) for r in rows)) for i, c in enumerate(cols)]
            lines.append(f"{prefix}:")
            lines.append("  " + "  ".join(c.ljust(w) for c, w in zip(cols, widths)))
            for r in rows:
                lines.append("  " + "  ".join(v.ljust(w) for v, w in zip(r, widths)))
        else:
            lines.append(f"{prefix:<40} {_fmt(node)}")

    walk("", envelope["results"])
    for w in envelope["warnings"]:
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"


_COMMANDS = {
    "moments": cmd_moments,
    "bounds": cmd_bounds,
    "tails": cmd_tails,
    "count": cmd_count,
    "significance": cmd_significance,
    "oracle": cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", default="-", help="edge-list file, or - for stdin")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false", help="JSON output (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true", help="human-readable table")
    common.set_defaults(pretty=False)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="maximum number of subsets the oracle may enumerate")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(
        prog="subgraph-moments",
        description="Moments, bounds and tail estimates for random induced subgraph sizes.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moments", parents=[common], help="S1, S2, mu2 and variance per c")
    p.add_argument("--c", required=True, help="5, 2..6, 2,4,7 or all")

    p = sub.add_parser("bounds", parents=[common], help="densest/sparsest subgraph bounds")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--ell", type=int, default=None, help="certified lower bound on l(c)")
    p.add_argument("--u", type=int, default=None, help="certified upper bound on u(c)")

    p = sub.add_parser("tails", parents=[common], help="bounds on P(M_c >= t)")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--diagnostics", action="store_true",
                   help="also report the uncertified printed variants")

    p = sub.add_parser("count", parents=[common], help="bounds on trivial-subgraph counts")
    p.add_argument("--kind", required=True, choices=[k.value for k in CountKind])
    p.add_argument("--c", type=int, default=None)

    p = sub.add_parser("significance", parents=[common], help="hyper-density test of a community")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--community", help="comma-separated vertex labels")
    grp.add_argument("--community-file", help="file with one vertex label per line")
    p.add_argument("--alpha", default="0.05")

    p = sub.add_parser("oracle", parents=[common],
                       help="exhaustive distribution, checked against the formulas")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("gen", parents=[common], help="write a generated graph as an edge list")
    p.add_argument("family")
    p.add_argument("params", type=int, nargs="*")
    p.add_argument("--output", "-o", default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gen":
            return cmd_gen(args)
        digest, results, warnings = _COMMANDS[args.command](args)
        envelope = {"command": args.command, "input_digest": digest,
                    "results": to_jsonable(results), "warnings": warnings}
        if args.pretty:
            sys.stdout.write(_pretty(envelope))
        else:
            sys.stdout.write(json.dumps(envelope, sort_keys=True, indent=2) + "\n")
        if args.command == "oracle" and not results["match"]:
            raise MismatchError("closed-form moments disagree with enumeration")
    except SubgraphMomentsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
