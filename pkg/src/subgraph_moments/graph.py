"""Simple undirected graphs: storage, edge-list I/O and generators.

Graphs are stored in CSR form (``indptr``/``indices``) so that degree scans
and neighbourhood slices are O(n + m) numpy operations even for millions of
edges.  Instances are immutable; the backing arrays are marked read-only.
"""

from __future__ import annotations

import heapq
import re
from collections.abc import Iterable, Sequence
from enum import Enum
from math import comb

import numpy as np

from .errors import ParseError, ValidationError

__all__ = [
    "Family",
    "Graph",
    "complete",
    "complete_bipartite",
    "disjoint_union",
    "empty",
    "generate",
    "matching",
    "parse_edge_list",
    "path",
    "random_gnm",
    "random_tree",
    "serialize",
    "star",
]


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    Build instances with :meth:`from_edges` or :func:`parse_edge_list`; the
    constructor trusts its CSR arguments to already be canonical (sorted,
    symmetric, loop-free).
    """

    __slots__ = ("n", "indptr", "indices", "labels", "_adj")

    def __init__(self, n: int, indptr: np.ndarray, indices: np.ndarray,
                 labels: Sequence[str] | None = None):
        indptr = np.asarray(indptr, dtype=np.int64)
        indices = np.asarray(indices, dtype=np.int64)
        indptr.setflags(write=False)
        indices.setflags(write=False)
        self.n = int(n)
        self.indptr = indptr
        self.indices = indices
        self.labels = tuple(labels) if labels is not None else None
        self._adj = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]] | np.ndarray,
                   labels: Sequence[str] | None = None) -> Graph:
        """Build a graph from an edge iterable; duplicates collapse, loops raise."""
        if n < 0:
            raise ValidationError(f"vertex count must be non-negative, got {n}")
        arr = np.asarray(edges if isinstance(edges, np.ndarray) else list(edges),
                         dtype=np.int64).reshape(-1, 2)
        if arr.size:
            lo_v, hi_v = int(arr.min()), int(arr.max())
            if lo_v < 0 or hi_v >= n:
                raise ValidationError(
                    f"edge endpoint out of range for n={n}: {lo_v if lo_v < 0 else hi_v}")
            loops = np.flatnonzero(arr[:, 0] == arr[:, 1])
            if loops.size:
                raise ValidationError(f"self-loop on vertex {int(arr[loops[0], 0])}")
        if labels is not None and len(labels) != n:
            raise ValidationError(f"expected {n} labels, got {len(labels)}")
        lo = np.minimum(arr[:, 0], arr[:, 1])
        hi = np.maximum(arr[:, 0], arr[:, 1])
        key = np.unique(lo * n + hi) if arr.size else np.empty(0, dtype=np.int64)
        lo, hi = key // max(n, 1), key % max(n, 1)
        both = np.sort(np.concatenate([lo * n + hi, hi * n + lo]))
        src = both // max(n, 1)
        indices = both % max(n, 1)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return cls(n, indptr, indices, labels)

    @property
    def m(self) -> int:
        return len(self.indices) // 2

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Per-vertex sorted neighbour tuples (materialised lazily)."""
        if self._adj is None:
            flat = self.indices.tolist()
            ptr = self.indptr.tolist()
            self._adj = tuple(tuple(flat[ptr[v]:ptr[v + 1]]) for v in range(self.n))
        return self._adj

    def edge_array(self) -> np.ndarray:
        """``(m, 2)`` array of edges with ``u < v``, lexicographically sorted."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees())
        keep = src < self.indices
        return np.column_stack([src[keep], self.indices[keep]])

    def edges(self) -> list[tuple[int, int]]:
        return [(int(u), int(v)) for u, v in self.edge_array()]

    def bitsets(self) -> list[int]:
        """Adjacency as Python-int bitmasks, for small-graph enumeration."""
        out = []
        for nbrs in self.adjacency:
            mask = 0
            for w in nbrs:
                mask |= 1 << w
            out.append(mask)
        return out

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def index_of(self, label: str | int) -> int:
        """Resolve a vertex label (or integer index) to its dense index."""
        if self.labels is not None:
            try:
                return self.labels.index(str(label))
            except ValueError:
                raise ValidationError(f"unknown vertex {label!r}") from None
        try:
            v = int(label)
        except (TypeError, ValueError):
            raise ValidationError(f"unknown vertex {label!r}") from None
        if not 0 <= v < self.n:
            raise ValidationError(f"unknown vertex {label!r}")
        return v

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n == other.n
                and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# --------------------------------------------------------------------------
# Edge-list I/O
# --------------------------------------------------------------------------

_HEADER = re.compile(rb"\A[ \t]*n[ \t]+(\d{1,18})[ \t]*(?:\r?\n|\Z)")
_ALLOWED = np.zeros(256, dtype=bool)
_ALLOWED[list(b"0123456789 \t\r\n")] = True
_IS_DIGIT = np.zeros(256, dtype=bool)
_IS_DIGIT[list(b"0123456789")] = True


def _numeric_pairs_only(body: bytes) -> bool:
    """True when every non-blank line holds exactly two integer tokens."""
    buf = np.frombuffer(body, dtype=np.uint8)
    if not _ALLOWED[buf].all():
        return False
    digit = _IS_DIGIT[buf]
    edge = np.diff(digit.astype(np.int8), prepend=0, append=0)
    starts = np.flatnonzero(edge == 1)
    ends = np.flatnonzero(edge == -1)
    if starts.size and (ends - starts).max() > 18:
        return False
    line_of = np.cumsum(buf == ord("\n"))
    per_line = np.bincount(line_of[starts]) if starts.size else np.zeros(1, dtype=np.int64)
    return bool(np.all((per_line == 0) | (per_line == 2)))


def parse_edge_list(data: bytes | str) -> Graph:
    """Parse a whitespace-separated edge list.

    ``#`` and ``%`` start comment lines.  A first content line of the form
    ``n <N>`` fixes the vertex count, which allows isolated vertices.  When
    every label is a non-negative integer the labels are used directly as
    vertex indices; otherwise labels are mapped to dense indices in
    first-seen order and kept on ``Graph.labels``.
    """
    if isinstance(data, str):
        data = data.encode()
    fast = _parse_numeric_fast(data)
    if fast is not None:
        return fast
    return _parse_general(data)


def _parse_numeric_fast(data: bytes) -> Graph | None:
    # Pure-integer files without comments: vectorised parse.  Anything
    # unusual falls through to the line-by-line parser, which owns the
    # error messages.
    n_header = None
    body = data
    head = _HEADER.match(data)
    if head:
        n_header = int(head.group(1))
        body = data[head.end():]
    if not _numeric_pairs_only(body):
        return None
    # Text-mode fromstring is safe here: the body is digits and whitespace only.
    arr = np.fromstring(body, dtype=np.int64, sep=" ").reshape(-1, 2)
    if arr.size and np.any(arr[:, 0] == arr[:, 1]):
        return None
    needed = int(arr.max()) + 1 if arr.size else 0
    n = needed if n_header is None else n_header
    if n < needed:
        return None
    return Graph.from_edges(n, arr)


def _parse_general(data: bytes) -> Graph:
    text = data.decode("utf-8", errors="replace")
    n_header = None
    pairs: list[tuple[str, str, int]] = []
    seen_content = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        toks = line.split()
        if not seen_content and len(toks) == 2 and toks[0] == "n" and toks[1].isdigit():
            n_header = int(toks[1])
            seen_content = True
            continue
        seen_content = True
        if len(toks) != 2:
            raise ParseError(f"expected 2 vertex labels, found {len(toks)}", lineno)
        if toks[0] == toks[1]:
            raise ValidationError(f"line {lineno}: self-loop on vertex {toks[0]!r}")
        pairs.append((toks[0], toks[1], lineno))

    numeric = all(a.isascii() and a.isdigit() and b.isascii() and b.isdigit()
                  for a, b, _ in pairs)
    if numeric:
        edges = [(int(a), int(b)) for a, b, _ in pairs]
        for (u, v), (_, _, lineno) in zip(edges, pairs):
            if u == v:
                raise ValidationError(f"line {lineno}: self-loop on vertex {u}")
        needed = max((max(e) for e in edges), default=-1) + 1
        n = needed if n_header is None else n_header
        if n < needed:
            raise ValidationError(f"header declares n={n} but vertex {needed - 1} appears")
        return Graph.from_edges(n, edges)

    index: dict[str, int] = {}
    edges = []
    for a, b, _ in pairs:
        edges.append((index.setdefault(a, len(index)), index.setdefault(b, len(index))))
    labels = list(index)
    n = len(labels) if n_header is None else n_header
    if n < len(labels):
        raise ValidationError(f"header declares n={n} but {len(labels)} distinct vertices appear")
    for extra in range(len(labels), n):
        name = str(extra)
        if name in index:
            raise ValidationError(f"cannot name padding vertex {extra}: label already in use")
        labels.append(name)
    return Graph.from_edges(n, edges, labels)


def serialize(g: Graph) -> str:
    """Canonical edge list: ``n <N>`` header then sorted ``u v`` lines, u < v."""
    edges = g.edge_array()
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in edges.tolist())
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# Generators
# --------------------------------------------------------------------------

class Family(str, Enum):
    COMPLETE = "complete"
    STAR = "star"
    COMPLETE_BIPARTITE = "complete_bipartite"
    MATCHING = "matching"
    PATH = "path"
    EMPTY = "empty"
    RANDOM_GNM = "random_gnm"
    RANDOM_TREE = "random_tree"


_ALIASES = {"gnm": Family.RANDOM_GNM, "tree": Family.RANDOM_TREE,
            "bipartite": Family.COMPLETE_BIPARTITE}


def _check_nonneg(**params: int) -> None:
    for name, value in params.items():
        if int(value) != value or value < 0:
            raise ValidationError(f"{name} must be a non-negative integer, got {value!r}")


def complete(n: int) -> Graph:
    _check_nonneg(n=n)
    iu = np.triu_indices(n, 1)
    return Graph.from_edges(n, np.column_stack(iu))


def star(n: int) -> Graph:
    """K_{1,n-1} with centre 0."""
    _check_nonneg(n=n)
    return Graph.from_edges(n, [(0, v) for v in range(1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    _check_nonneg(a=a, b=b)
    return Graph.from_edges(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def matching(d: int) -> Graph:
    """d disjoint edges on 2d vertices."""
    _check_nonneg(d=d)
    return Graph.from_edges(2 * d, [(2 * i, 2 * i + 1) for i in range(d)])


def path(n: int) -> Graph:
    _check_nonneg(n=n)
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def empty(n: int) -> Graph:
    _check_nonneg(n=n)
    return Graph.from_edges(n, [])


def random_gnm(n: int, m: int, seed: int | None = 0) -> Graph:
    """Uniform random graph with exactly ``m`` edges (reproducible per seed)."""
    _check_nonneg(n=n, m=m)
    total = comb(n, 2)
    if m > total:
        raise ValidationError(f"m={m} exceeds n(n-1)/2={total}")
    rng = np.random.default_rng(seed)
    if total <= 4 * m or total <= 1_000_000:
        pick = np.sort(rng.choice(total, size=m, replace=False))
        iu = np.triu_indices(n, 1)
        return Graph.from_edges(n, np.column_stack([iu[0][pick], iu[1][pick]]))
    # Sparse regime: draw pairs with rejection, keeping first occurrences in
    # draw order so the result is a uniform m-subset.
    keys = np.empty(0, dtype=np.int64)
    while True:
        need = m - len(np.unique(keys))
        if need <= 0:
            break
        batch = int(need * 1.1) + 16
        u = rng.integers(0, n, size=batch)
        v = rng.integers(0, n, size=batch)
        ok = u != v
        u, v = u[ok], v[ok]
        keys = np.concatenate([keys, np.minimum(u, v) * n + np.maximum(u, v)])
    _, first = np.unique(keys, return_index=True)
    chosen = keys[np.sort(first)[:m]]
    return Graph.from_edges(n, np.column_stack([chosen // n, chosen % n]))


def random_tree(n: int, seed: int | None = 0) -> Graph:
    """Uniform random labelled tree via a random Pruefer sequence."""
    _check_nonneg(n=n)
    if n <= 2:
        return path(n)
    rng = np.random.default_rng(seed)
    seq = rng.integers(0, n, size=n - 2).tolist()
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return Graph.from_edges(n, edges)


def disjoint_union(*graphs: Graph) -> Graph:
    """Disjoint union; vertices of later graphs are shifted past earlier ones."""
    offset = 0
    parts = []
    for g in graphs:
        parts.append(g.edge_array() + offset)
        offset += g.n
    edges = np.concatenate(parts) if parts else np.empty((0, 2), dtype=np.int64)
    return Graph.from_edges(offset, edges)


_BUILDERS = {
    Family.COMPLETE: (complete, 1),
    Family.STAR: (star, 1),
    Family.COMPLETE_BIPARTITE: (complete_bipartite, 2),
    Family.MATCHING: (matching, 1),
    Family.PATH: (path, 1),
    Family.EMPTY: (empty, 1),
    Family.RANDOM_GNM: (random_gnm, 2),
    Family.RANDOM_TREE: (random_tree, 1),
}


def generate(family: Family | str, *params: int, seed: int | None = 0) -> Graph:
    """Build a member of a named family, e.g. ``generate("star", 5)``."""
    try:
        fam = _ALIASES.get(family) or Family(family)
    except ValueError:
        names = ", ".join(f.value for f in Family)
        raise ValidationError(f"unknown family {family!r}; expected one of {names}") from None
    builder, arity = _BUILDERS[fam]
    if len(params) != arity:
        raise ValidationError(f"{fam.value} takes {arity} parameter(s), got {len(params)}")
    if fam in (Family.RANDOM_GNM, Family.RANDOM_TREE):
        return builder(*params, seed=seed)
    return builder(*params)
