from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from tbcode import peeters
from tbcode.errors import CapExceeded
from tbcode.gf2 import BitMatrix, Subspace
from tbcode.graphs import complement, is_independent
from tbcode.minrank import represents


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_generated_graph_matches_oracle(k):
    labels, edges = oracles.peeters(k)
    P = peeters.generate(k)
    assert list(P.labels) == labels
    assert frozenset(P.graph.edges()) == edges
    assert P.graph.n == peeters.vertex_count(k)
    assert set(P.graph.degrees()) == {peeters.degree(k)}


def test_label_strings_for_k2():
    P = peeters.generate(2)
    assert P.label_strings() == [("01", "01"), ("01", "11"), ("10", "10"), ("10", "11"), ("11", "01"), ("11", "10")]
    assert sorted(P.graph.edges()) == [(0, 2), (1, 5), (3, 4)]


def test_bitstring_round_trip():
    assert peeters.bitstring(1, 3) == "100"
    assert all(peeters.parse_bitstring(peeters.bitstring(x, 5)) == x for x in range(32))


def test_generation_cap():
    with pytest.raises(CapExceeded):
        peeters.generate(8)
    with pytest.raises(CapExceeded):
        peeters.generate(0)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_explicit_matrix_and_canonical_set(k):
    W = peeters.explicit_representing_matrix(k)
    H = complement(peeters.generate(k).graph)
    assert represents(W.matrix, H) and W.rank == k
    S = peeters.canonical_independent_set(k)
    assert len(S) == k and is_independent(H, S)


def test_canonical_set_k2_is_the_unit_pairs():
    assert peeters.canonical_independent_set(2) == (0, 2)


def test_pair_count_examples():
    e1e2 = Subspace.span(BitMatrix.from_strings(["010", "001"]))
    assert peeters.subspace_pair_count(e1e2, e1e2) == 6
    assert peeters.subspace_pair_bound(3, 1) == 4
    for k in range(1, 6):
        full = Subspace.full(k)
        assert peeters.subspace_pair_count(full, full) == peeters.vertex_count(k)
    assert peeters.subspace_pair_count(Subspace.full(4), Subspace.zero(4)) == 0
    with pytest.raises(CapExceeded):
        peeters.subspace_pair_count(Subspace.full(7), Subspace.full(7))


@given(st.integers(1, 6), st.data())
def test_pair_count_matches_oracle(k, data):
    rows = lambda: data.draw(st.lists(st.integers(0, 2**k - 1), max_size=k))
    A, B = rows(), rows()
    W1 = Subspace.span(BitMatrix.from_int_rows(A, k))
    W2 = Subspace.span(BitMatrix.from_int_rows(B, k))
    assert peeters.subspace_pair_count(W1, W2) == oracles.odd_pairs(A, B)


def test_threshold_values():
    # G_4: n=120, d=28, lambda=8, r=2 -> 9 * 120 / 28
    assert peeters.kr_threshold(120, 28, 8, 2) == pytest.approx(38.5714285714, rel=1e-12)
    q = 496 / 120
    assert peeters.kr_threshold(496, 120, 2**4.5, 3) == pytest.approx((2**4.5 + 1) * q * (1 + q), rel=1e-12)
    with pytest.raises(ValueError):
        peeters.kr_threshold(10, 3, 1, 1)
    with pytest.raises(ValueError):
        peeters.kr_threshold(10, 0, 1, 2)


def test_closed_forms():
    assert [peeters.vertex_count(k) for k in range(1, 7)] == [1, 6, 28, 120, 496, 2016]
    assert [peeters.degree(k) for k in range(1, 7)] == [0, 1, 6, 28, 120, 496]
    assert peeters.second_eigenvalue(4) == 8.0 and peeters.second_eigenvalue(6) == 64.0
    assert peeters.subspace_pair_bound(4, 2) == 0 and peeters.subspace_pair_bound(4, 0) == 120
    assert isinstance(peeters.subspace_pair_bound(3, 2), Fraction)


def test_subset_experiment_is_seeded():
    a = peeters.kr_subset_experiment(4, 2, 20, 25, seed=7)
    b = peeters.kr_subset_experiment(4, 2, 20, 25, seed=7)
    assert a == b and 0 <= a.successes <= a.trials
    full = peeters.kr_subset_experiment(3, 2, 28, 3, seed=0)
    assert full.rate == 1.0
    with pytest.raises(CapExceeded):
        peeters.kr_subset_experiment(7, 2, 10, 1, seed=0)


def test_clique_count_experiment_matches_oracle():
    rep = peeters.clique_count_experiment(4, 3, 30, seed=3)
    import numpy as np

    from tbcode.graphs import induced_subgraph

    G = peeters.generate(4).graph
    U = np.random.default_rng(3).choice(G.n, size=30, replace=False).tolist()
    sub, _ = induced_subgraph(G, U)
    assert rep.exact == oracles.count_cliques(sub.n, frozenset(sub.edges()), 3)
    assert rep.predicted == pytest.approx(30**3 / 6 / 64)
