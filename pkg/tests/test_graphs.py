from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from tbcode import graphs
from tbcode.errors import CapExceeded, DimensionMismatch, IsolatedVertexError
from tbcode.graphs import Graph


@st.composite
def small_graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


def edge_set(G):
    return frozenset(G.edges())


def test_constructors_reject_bad_input():
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 3)])
    with pytest.raises(ValueError):
        Graph(2, [0b10, 0b00])
    with pytest.raises(DimensionMismatch):
        Graph(3, [0, 0])


def test_solver_examples():
    C4, C5 = Graph.cycle(4), Graph.cycle(5)
    assert graphs.independence_number(C5)[0] == 2
    assert len(graphs.min_dominating_set(C4)) == 2
    assert graphs.min_dominating_set(Graph.star(5)) == (0,)
    assert len(graphs.min_dominating_set(Graph.complete(6))) == 1
    assert graphs.greedy_dominating_set(C4) == (0, 2)
    assert graphs.count_cliques(Graph.complete(4), 3) == 4
    assert graphs.count_cliques(Graph.complete(6), 4) == 15


def test_homomorphism_examples():
    assert graphs.homomorphism_exists(Graph.empty(3), Graph.empty(1))
    assert not graphs.homomorphism_exists(Graph.complete(2), Graph.empty(4))
    assert graphs.homomorphism_exists(Graph.cycle(4), Graph.complete(2))
    assert not graphs.homomorphism_exists(Graph.cycle(5), Graph.complete(2))
    with pytest.raises(CapExceeded):
        graphs.homomorphism_exists(Graph.empty(7), Graph.empty(1))


def test_greedy_rejects_isolated_and_dependent_seed():
    with pytest.raises(IsolatedVertexError):
        graphs.greedy_dominating_set(Graph.from_edges(3, [(0, 1)]))
    with pytest.raises(ValueError):
        graphs.greedy_dominating_set(Graph.complete(3), seed=(0, 1))


def test_clique_budget_is_enforced():
    with pytest.raises(CapExceeded):
        graphs.count_cliques(Graph.complete(20), 5, budget=100)


def test_caps():
    with pytest.raises(CapExceeded):
        graphs.independence_number(Graph.empty(41))
    with pytest.raises(CapExceeded):
        graphs.min_dominating_set(Graph.cycle(31))


@given(small_graphs())
def test_independence_number_matches_oracle(G):
    a, S = graphs.independence_number(G)
    assert a == oracles.alpha(G.n, edge_set(G)) == len(S)
    assert graphs.is_independent(G, S)


@given(small_graphs())
def test_domination_number_matches_oracle(G):
    D = graphs.min_dominating_set(G)
    assert graphs.is_dominating(G, D)
    assert len(D) == oracles.gamma(G.n, edge_set(G))


@given(small_graphs())
def test_greedy_set_is_maximal_independent(G):
    if G.isolated_vertices():
        return
    D = graphs.greedy_dominating_set(G)
    assert graphs.is_independent(G, D) and graphs.is_dominating(G, D)
    assert len(D) <= graphs.independence_number(G)[0]


@given(small_graphs(), st.integers(2, 4))
def test_clique_search_and_count_match_oracle(G, r):
    found = graphs.find_clique(G, r)
    assert (found is not None) == oracles.has_clique(G.n, edge_set(G), r)
    if found is not None:
        assert len(found) == r and graphs.is_clique(G, found)
    assert graphs.count_cliques(G, r) == oracles.count_cliques(G.n, edge_set(G), r)


@given(small_graphs(max_n=5), small_graphs(max_n=4))
def test_homomorphism_witness_preserves_edges(H, T):
    f = graphs.find_homomorphism(H, T)
    if f is not None:
        assert all(T.has_edge(f[u], f[v]) for u, v in H.edges())
    elif T.num_edges == 0:
        assert H.num_edges > 0


@given(small_graphs())
def test_complement_and_induced_subgraph(G):
    H = graphs.complement(G)
    assert G.num_edges + H.num_edges == G.n * (G.n - 1) // 2
    assert graphs.complement(H) == G
    U = list(range(0, G.n, 2))
    sub, order = graphs.induced_subgraph(G, U)
    assert order == tuple(U)
    assert all(sub.has_edge(a, b) == G.has_edge(order[a], order[b]) for a, b in combinations(range(sub.n), 2))


@given(small_graphs(max_n=7))
def test_clique_cover_partitions_into_cliques(G):
    cover = graphs.clique_cover(G)
    assert sorted(v for c in cover for v in c) == list(range(G.n))
    assert all(graphs.is_clique(G, c) for c in cover)
    assert len(cover) == oracles.chromatic(G.n, edge_set(graphs.complement(G)))
