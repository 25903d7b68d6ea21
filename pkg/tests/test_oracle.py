from fractions import Fraction
from math import comb

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subgraph_moments.errors import BudgetExceededError, ValidationError
from subgraph_moments.graph import (
    Graph,
    complete,
    complete_bipartite,
    matching,
    path,
    random_gnm,
    random_tree,
    star,
)
from subgraph_moments.moments import binomial_moments
from subgraph_moments.oracle import (
    all_graphs,
    batch_subset_sizes,
    clique_number,
    count_independent_sets,
    count_subtrees,
    exact_distribution,
    exact_summary,
    exact_trivial_counts,
    family_distribution,
    independence_number,
    multinomial,
)
from subgraph_moments.stats import compute_stats


def test_distribution_examples():
    assert exact_distribution(star(5), 3).counts == {0: 4, 2: 6}
    assert exact_distribution(complete(4), 2).counts == {1: 6}
    assert exact_distribution(matching(3), 2).counts == {0: 12, 1: 3}


def test_summary_examples():
    s = exact_summary(exact_distribution(star(5), 3))
    assert (s.ell, s.u, s.s1) == (0, 2, Fraction(6, 5))
    assert exact_summary(exact_distribution(complete(5), 3)).sigma2 == 0


def test_summary_matches_formula_on_seeded_graph():
    g = random_gnm(9, 14, seed=7)
    s = exact_summary(exact_distribution(g, 4))
    mom = binomial_moments(compute_stats(g), 4)
    assert (s.s1, s.s2, s.mu2, s.sigma2) == (mom.s1, mom.s2, mom.mu2, mom.sigma2)


def test_tails():
    d = exact_distribution(star(9), 3)
    assert d.tail(2) == Fraction(1, 3)
    assert d.tail(0) == 1
    assert d.lower_tail(0) == Fraction(2, 3)
    assert d.probability(1) == 0


def test_budget_refusal():
    with pytest.raises(BudgetExceededError) as err:
        exact_distribution(complete(30), 15)
    assert err.value.required == comb(30, 15)
    assert "--budget" in str(err.value)
    assert exact_distribution(complete(30), 2, budget=comb(30, 2)).total == 435


def test_parallel_equals_sequential():
    g = random_gnm(16, 50, seed=4)
    assert exact_distribution(g, 6, workers=3) == exact_distribution(g, 6)


def test_to_json_uses_strings():
    js = exact_distribution(star(5), 3).to_json()
    assert js == {"c": 3, "total": "10", "counts": {"0": "4", "2": "6"}}


def test_trivial_counts():
    t = exact_trivial_counts(star(6), 2)
    assert (t.independent_sets, t.cliques) == (10, 5)
    t = exact_trivial_counts(complete(5), 3)
    assert (t.cliques, t.independent_sets) == (10, 0)
    assert exact_trivial_counts(path(4), 3).subtrees == 2
    assert exact_trivial_counts(complete(4), 3).subtrees is None
    assert exact_trivial_counts(complete_bipartite(2, 2), 4).balanced_bicliques == 1


def test_matching_identity_instance():
    assert multinomial(3, 0, 2, 1) * 4 + multinomial(3, 1, 0, 2) == 15
    assert multinomial(3, -1, 2, 2) == 0


def test_family_closed_forms():
    for n in range(2, 11):
        for c in range(2, n + 1):
            assert family_distribution("star", n, c).counts == {
                k: v for k, v in {0: comb(n - 1, c), c - 1: comb(n - 1, c - 1)}.items() if v}
            assert family_distribution("complete", n, c).counts == {c * (c - 1) // 2: comb(n, c)}
    with pytest.raises(ValidationError):
        family_distribution("petersen", 10, 3)
    with pytest.raises(ValidationError):
        family_distribution("complete_bipartite", (2, 3), 2)


def test_balanced_biclique_weights_normalise():
    for d in range(1, 7):
        for c in range(2, 2 * d + 1):
            fam = family_distribution("complete_bipartite_balanced", d, c)
            assert sum(fam.counts.values()) == comb(2 * d, c)


def _nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


@pytest.mark.parametrize("seed", range(8))
def test_clique_and_independence_numbers(seed):
    g = random_gnm(11, 25, seed=seed)
    h = _nx(g)
    omega = max(len(c) for c in nx.find_cliques(h))
    assert clique_number(g) == omega
    alpha = max(len(c) for c in nx.find_cliques(nx.complement(h)))
    assert independence_number(g) == alpha


def test_independent_set_and_subtree_totals():
    assert count_independent_sets(star(6)) == 2**5 + 1
    assert count_independent_sets(path(4)) == 8
    assert count_subtrees(star(5)) == 2**4 + 4
    assert count_subtrees(path(4)) == 10


@pytest.mark.parametrize("n", range(2, 10))
def test_subtree_count_matches_brute_force(n):
    g = random_tree(n, seed=n)
    via_levels = n + sum(exact_trivial_counts(g, c).subtrees for c in range(2, n + 1))
    assert via_levels == count_subtrees(g)


def test_all_graphs_count():
    assert sum(1 for _ in all_graphs(4)) == 64


@given(st.integers(2, 7), st.data())
@settings(max_examples=50, deadline=None)
def test_batch_sizes_match_enumeration(n, data):
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    row = np.array(data.draw(st.lists(st.integers(0, 1), min_size=len(pairs),
                                      max_size=len(pairs))))
    g = Graph.from_edges(n, [p for p, b in zip(pairs, row) if b])
    sizes = batch_subset_sizes(n, row[None, :])[0]
    for c in range(n + 1):
        masks = [mask for mask in range(1 << n) if mask.bit_count() == c]
        ks, vs = np.unique(sizes[masks], return_counts=True)
        assert dict(zip(ks.tolist(), vs.tolist())) == exact_distribution(g, c).counts
