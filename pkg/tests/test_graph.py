import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from plap import graph as G
from plap.errors import (
    BadLabel,
    BadParams,
    DuplicateEdge,
    NonpositiveMeasure,
    NonpositiveWeight,
    SelfLoop,
    TooLargeForSearch,
)
from plap.graph import SignedGraph, is_connected, is_subgraph


def test_minimal_graph_is_valid():
    g = SignedGraph.from_edges(2, [(1, 2, 1.0, -1)])
    G.validate(g)
    assert g.n == 2 and g.m == 1
    assert g.edges == [(1, 2, 1.0, -1)]


@pytest.mark.parametrize("edges, kwargs, exc", [
    ([(1, 1, 1.0, -1)], {}, SelfLoop),
    ([(1, 2, -1.0, -1)], {}, NonpositiveWeight),
    ([(1, 2, 0.0, -1)], {}, NonpositiveWeight),
    ([(1, 2, 1.0, -1), (2, 1, 1.0, 1)], {}, DuplicateEdge),
    ([(1, 3, 1.0, -1)], {}, BadLabel),
    ([(0, 1, 1.0, -1)], {}, BadLabel),
    ([(1, 2, 1.0, -1)], {"mu": [1.0, 0.0]}, NonpositiveMeasure),
])
def test_validation_errors(edges, kwargs, exc):
    with pytest.raises(exc):
        SignedGraph.from_edges(2, edges, **kwargs)


def test_error_names_first_offender():
    with pytest.raises(DuplicateEdge, match=r"edge #3 \(2, 1\)"):
        SignedGraph.from_edges(3, [(1, 2, 1), (2, 3, 1), (2, 1, 1)])


def test_negative_kappa_allowed():
    g = SignedGraph.from_edges(2, [(1, 2, 1.0)], kappa=[-3.0, 1.0])
    assert g.kappa[0] == -3.0


def test_graph_is_immutable():
    g = G.cycle(4)
    with pytest.raises(ValueError):
        g.w[0] = 5.0
    with pytest.raises(AttributeError):
        g.n = 3


def test_is_connected():
    assert is_connected(G.cycle(4))
    assert not is_connected(SignedGraph.from_edges(4, [(1, 2, 1), (3, 4, 1)]))
    assert is_connected(SignedGraph.from_edges(1, []))


def test_star():
    g = G.star(3)
    assert g.n == 4 and g.m == 3
    assert all(1 in (i, j) for i, j, _, _ in g.edges)


def test_join_counts():
    g = G.join(G.complete(8), G.empty(12))
    assert g.n == 20
    assert g.m == 28 + 96


def test_gnm_large_size():
    g = G.gnm(1000, 250000, seed=7)
    assert g.n == 1000 and g.m == 250000


def test_gnm_deterministic_and_distinct():
    a, b = G.gnm(30, 100, seed=3), G.gnm(30, 100, seed=3)
    assert a == b
    assert G.gnm(30, 100, seed=4) != a
    key = set(zip(a.src.tolist(), a.dst.tolist()))
    assert len(key) == 100 and all(i < j for i, j in key)


def test_gnm_too_many_edges():
    with pytest.raises(BadParams):
        G.gnm(5, 11, seed=0)


def test_hypercube_is_regular():
    g = G.hypercube(3)
    assert g.n == 8 and g.m == 12
    assert set(g.degrees().tolist()) == {3}


def test_generate_dispatch_and_sigma_override():
    g = G.generate("cycle", 5, sigma=1)
    assert g.m == 5 and np.all(g.sigma == 1)
    g = G.generate("path", 3, sigma=[1, -1])
    assert g.sigma.tolist() == [1.0, -1.0]
    assert G.generate("gnm", 6, 4, seed=1).m == 4
    with pytest.raises(BadParams):
        G.generate("wheel", 5)


@given(st.integers(3, 40))
def test_cycle_degrees(n):
    g = G.cycle(n)
    assert g.m == n
    assert np.all(g.degrees() == 2)


def test_subgraph_examples():
    assert is_subgraph(G.star(2), G.cycle(4))
    assert not is_subgraph(G.star(4), G.hypercube(3))
    assert not is_subgraph(G.complete(3), G.cycle(4))


def test_subgraph_with_mapping():
    # P3 as 1-2-3 sits on C4's 1-2-3
    assert is_subgraph(G.path(3), G.cycle(4), mapping=[1, 2, 3])
    assert not is_subgraph(G.path(3), G.cycle(4), mapping=[1, 3, 2])
    with pytest.raises(BadParams):
        is_subgraph(G.path(3), G.cycle(4), mapping=[1, 1, 2])


def test_subgraph_respects_weights_and_vertex_data():
    heavy = SignedGraph.from_edges(2, [(1, 2, 2.0)])
    assert not is_subgraph(heavy, G.cycle(4))
    marked = SignedGraph.from_edges(2, [(1, 2, 1.0)], kappa=[1.0, 0.0])
    assert not is_subgraph(marked, G.cycle(4))


def test_subgraph_ignores_signature():
    assert is_subgraph(G.path(3, sigma=1), G.cycle(4))


def test_subgraph_search_cap():
    with pytest.raises(TooLargeForSearch):
        is_subgraph(G.path(3), G.cycle(13))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_subgraph_reflexive_and_transitive(seed):
    rng = np.random.default_rng(seed)
    g = G.gnm(7, int(rng.integers(3, 15)), seed=seed)
    assert is_subgraph(g, g)
    # drop a random edge -> h, then a random vertex-induced piece -> k
    keep = rng.random(g.m) < 0.7
    h = SignedGraph.from_arrays(g.n, g.src[keep], g.dst[keep], g.w[keep], g.sigma[keep], one_based=False)
    k = G.induced(h, sorted(rng.choice(g.n, 5, replace=False).tolist()))
    assert is_subgraph(h, g) and is_subgraph(k, h) and is_subgraph(k, g)
