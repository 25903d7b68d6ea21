"""Linear-time scalar statistics of a graph.

Everything downstream (moments, support bounds, tails) needs only a handful
of integers: ``m``, the path-count statistic ``D2 = sum d(v)(d(v)-1)``, the
same two numbers for the complement, a bipartiteness flag and certified
upper bounds on the independence and clique numbers.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace

import numpy as np

from .graph import Graph

__all__ = [
    "GraphStats",
    "compute_stats",
    "degeneracy",
    "greedy_matching",
    "is_bipartite",
    "is_connected",
    "is_tree",
]

# Below this edge count the pure-Python routines beat numpy call overhead.
_SMALL = 4096


@dataclass(frozen=True)
class GraphStats:
    """Degree-derived statistics of a graph and of its complement.

    ``alpha_upper`` and ``omega_upper`` never under-estimate the independence
    and clique numbers.  ``is_bipartite`` is True only when certified.
    """

    n: int
    m: int
    d2: int
    is_bipartite: bool
    alpha_upper: int
    omega_upper: int
    comp_m: int
    comp_d2: int

    def complement(self) -> GraphStats:
        """Statistics of the complement graph, without building it.

        alpha and omega swap roles.  Bipartiteness of the complement is only
        claimed when it is edgeless.
        """
        return replace(self, m=self.comp_m, d2=self.comp_d2,
                       comp_m=self.m, comp_d2=self.d2,
                       is_bipartite=self.comp_m == 0,
                       alpha_upper=self.omega_upper, omega_upper=self.alpha_upper)


def compute_stats(g: Graph) -> GraphStats:
    n = g.n
    deg = g.degrees()
    d2 = 0
    comp_d2 = 0
    # Sum over distinct degree values with Python ints: exact for any n.
    hist = np.bincount(deg) if n else np.zeros(0, dtype=np.int64)
    for d, count in enumerate(hist.tolist()):
        if count:
            d2 += count * d * (d - 1)
            comp_d2 += count * (n - 1 - d) * (n - 2 - d)
    m = g.m
    return GraphStats(
        n=n,
        m=m,
        d2=d2,
        is_bipartite=is_bipartite(g),
        alpha_upper=n - len(greedy_matching(g)),
        omega_upper=degeneracy(g) + 1,
        comp_m=n * (n - 1) // 2 - m,
        comp_d2=comp_d2,
    )


def is_bipartite(g: Graph) -> bool:
    if g.m <= _SMALL:
        return _is_bipartite_bfs(g)
    return _is_bipartite_cover(g)


def _is_bipartite_bfs(g: Graph) -> bool:
    adj = g.adjacency
    color = [-1] * g.n
    for root in range(g.n):
        if color[root] >= 0:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if color[w] < 0:
                    color[w] = color[v] ^ 1
                    queue.append(w)
                elif color[w] == color[v]:
                    return False
    return True


def _is_bipartite_cover(g: Graph) -> bool:
    # A component lifts to two components of the bipartite double cover
    # exactly when it has no odd cycle.
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import connected_components

    n = g.n
    e = g.edge_array()
    u, v = e[:, 0], e[:, 1]
    rows = np.concatenate([u, u + n])
    cols = np.concatenate([v + n, v])
    cover = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(2 * n, 2 * n))
    base = coo_matrix((np.ones(len(u), dtype=np.int8), (u, v)), shape=(n, n))
    k_base, _ = connected_components(base, directed=False)
    k_cover, _ = connected_components(cover, directed=False)
    return k_cover == 2 * k_base


def greedy_matching(g: Graph) -> list[tuple[int, int]]:
    """Maximal matching built by scanning edges in lexicographic order."""
    if g.m <= _SMALL:
        matched = bytearray(g.n)
        out = []
        for u, v in g.edge_array().tolist():
            if not matched[u] and not matched[v]:
                matched[u] = matched[v] = 1
                out.append((u, v))
        return out
    return _greedy_matching_rounds(g)


def _greedy_matching_rounds(g: Graph) -> list[tuple[int, int]]:
    # An edge whose index is minimal among the live edges at both endpoints
    # is taken by the sequential scan too; repeating until no live edge
    # remains reproduces the sequential result exactly.
    e = g.edge_array()
    eid = np.arange(len(e), dtype=np.int64)
    u, v = e[:, 0], e[:, 1]
    taken = []
    best = np.empty(g.n, dtype=np.int64)
    while eid.size:
        best.fill(np.iinfo(np.int64).max)
        np.minimum.at(best, u, eid)
        np.minimum.at(best, v, eid)
        win = (best[u] == eid) & (best[v] == eid)
        taken.append(eid[win])
        matched = np.zeros(g.n, dtype=bool)
        matched[u[win]] = True
        matched[v[win]] = True
        live = ~(matched[u] | matched[v])
        eid, u, v = eid[live], u[live], v[live]
    chosen = np.sort(np.concatenate(taken)) if taken else np.empty(0, dtype=np.int64)
    return [(int(a), int(b)) for a, b in e[chosen]]


def degeneracy(g: Graph) -> int:
    """Largest k such that the graph has a non-empty k-core."""
    if g.m <= _SMALL:
        return _degeneracy_buckets(g)
    return _degeneracy_rounds(g)


def _degeneracy_buckets(g: Graph) -> int:
    adj = g.adjacency
    deg = [len(a) for a in adj]
    if not deg:
        return 0
    buckets: list[set[int]] = [set() for _ in range(max(deg) + 1)]
    for v, d in enumerate(deg):
        buckets[d].add(v)
    removed = [False] * g.n
    k = 0
    d = 0
    for _ in range(g.n):
        d = max(0, d - 1)
        while not buckets[d]:
            d += 1
        v = buckets[d].pop()
        k = max(k, d)
        removed[v] = True
        for w in adj[v]:
            if not removed[w]:
                buckets[deg[w]].discard(w)
                deg[w] -= 1
                buckets[deg[w]].add(w)
    return k


def _degeneracy_rounds(g: Graph) -> int:
    # Peel every vertex of current degree <= k at once; only neighbours of
    # peeled vertices can become new candidates, so total work is O(n + m)
    # plus one O(n) scan each time k has to grow.
    deg = g.degrees().astype(np.int64)
    indptr, indices = g.indptr, g.indices
    alive = np.ones(g.n, dtype=bool)
    remaining = g.n
    k = 0
    frontier = np.flatnonzero(deg <= k)
    while remaining:
        if frontier.size == 0:
            k = int(deg[alive].min())
            frontier = np.flatnonzero(alive & (deg <= k))
        alive[frontier] = False
        remaining -= frontier.size
        starts = indptr[frontier]
        lens = indptr[frontier + 1] - starts
        total = int(lens.sum())
        if total:
            offsets = np.repeat(starts - np.cumsum(lens) + lens, lens)
            nbrs = indices[offsets + np.arange(total)]
            nbrs = nbrs[alive[nbrs]]
            np.subtract.at(deg, nbrs, 1)
            cand = np.unique(nbrs)
            frontier = cand[deg[cand] <= k]
        else:
            frontier = np.empty(0, dtype=np.int64)
    return k


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return False
    if g.m <= _SMALL:
        adj = g.adjacency
        seen = bytearray(g.n)
        seen[0] = 1
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if not seen[w]:
                    seen[w] = 1
                    stack.append(w)
        return all(seen)
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import connected_components

    adj = csr_matrix((np.ones(len(g.indices), dtype=np.int8), g.indices, g.indptr),
                     shape=(g.n, g.n))
    return connected_components(adj, directed=False)[0] == 1


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)
