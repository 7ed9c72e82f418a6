import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from plap import graph as G
from plap.errors import OddP, TooLarge
from plap.graph import SignedGraph
from plap.operator import apply
from plap.power import solve_max, verify_eigenpair
from plap.tensor import (
    b_apply,
    build_tensor_pair,
    compare_paths,
    entry_B,
    entry_T,
    rel_dev,
    tensor_apply,
    tensor_apply_naive,
    tensor_residual,
)

from conftest import REF_F, REF_LAMBDA, random_signed


def test_entries_signed_c4(signed_c4):
    t = build_tensor_pair(signed_c4, 4)
    assert entry_T(t, 1, 1, 1, 1) == 4
    assert entry_T(t, 1, 4, 4, 4) == 2
    assert entry_T(t, 1, 2, 2, 2) == -1
    assert entry_T(t, 1, 2, 3, 4) == 0
    assert entry_T(t, 1, 3, 3, 3) == 0  # 1 and 3 are not adjacent
    assert entry_B(t, 1, 1, 1, 1) == 2 and entry_B(t, 1, 1, 1, 2) == 0


def test_entries_symmetric(signed_c4):
    t = build_tensor_pair(signed_c4, 4)
    for idx in itertools.product(range(1, 5), repeat=4):
        v = entry_T(t, *idx)
        for perm in itertools.permutations(idx):
            assert entry_T(t, *perm) == v


def test_odd_p_rejected(signed_c4):
    for p in (3, 5, 2.5, 0):
        with pytest.raises(OddP):
            build_tensor_pair(signed_c4, p)
    with pytest.raises(TooLarge):
        build_tensor_pair(signed_c4, 32)


def test_single_edge_all_ones():
    g = SignedGraph.from_edges(2, [(1, 2, 1.0, -1)])
    t = build_tensor_pair(g, 4)
    assert tensor_apply(t, [1, 1])[0] == 8
    assert tensor_apply_naive(t, [1, 1])[0] == 8
    assert tensor_apply_naive(t, [1, 2])[0] == 27
    assert np.array_equal(tensor_apply_naive(t, [0, 0]), [0, 0])


def test_indicator_vector(signed_c4):
    t = build_tensor_pair(signed_c4, 4)
    e1 = np.array([1.0, 0, 0, 0])
    tf = tensor_apply(t, e1)
    # row 1: diagonal; rows of neighbours j: (-sigma_1j)^3 w_1j
    assert tf[0] == 4
    assert tf[1] == (-1.0) ** 3 * 1
    assert tf[3] == 1.0 ** 3 * 2
    assert tf[2] == 0


def test_b_apply(signed_c4):
    g = SignedGraph.from_edges(2, [(1, 2, 1.0)])
    assert b_apply(build_tensor_pair(g, 4), [2, -1]).tolist() == [8, -1]
    assert b_apply(build_tensor_pair(signed_c4, 4), np.ones(4)).tolist() == [2, 1, 1, 1]


def test_reference_pair_tensor_residual(signed_c4):
    t = build_tensor_pair(signed_c4, 4)
    assert tensor_residual(t, REF_LAMBDA[0], REF_F[0]) <= 5e-2


def test_naive_size_guard():
    t = build_tensor_pair(G.path(20), 6)
    with pytest.raises(TooLarge):
        tensor_apply_naive(t, np.ones(20))


def test_naive_matches_on_c4_many_vectors(signed_c4):
    t = build_tensor_pair(signed_c4, 4)
    rng = np.random.default_rng(0)
    for _ in range(100):
        f = rng.standard_normal(4)
        assert rel_dev(tensor_apply(t, f), tensor_apply_naive(t, f)) <= 1e-12
        assert rel_dev(tensor_apply(t, f), signed_c4.mu * apply(signed_c4, 4, f)) <= 1e-10


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 4, 6]))
def test_equivalence_random_graphs(seed, p):
    g = random_signed(seed)
    t = build_tensor_pair(g, p)
    f = np.random.default_rng(seed).standard_normal(g.n)
    tf = tensor_apply(t, f)
    assert rel_dev(tf, g.mu * apply(g, p, f)) <= 1e-10
    assert rel_dev(tf, tensor_apply_naive(t, f)) <= 1e-12


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 4, 6]), st.floats(-3, 3))
def test_tensor_homogeneity(seed, p, c):
    g = random_signed(seed)
    t = build_tensor_pair(g, p)
    f = np.random.default_rng(seed).standard_normal(g.n)
    a, b = tensor_apply(t, c * f), c ** (p - 1) * tensor_apply(t, f)
    assert np.allclose(a, b, rtol=1e-12, atol=1e-12 * (1 + np.max(np.abs(b))))


@pytest.mark.parametrize("p", [2, 4, 6])
def test_eigenpair_transfer(p):
    g = G.gnm(8, 14, seed=5)
    pair, _ = solve_max(g, p)
    t = build_tensor_pair(g, p)
    res = verify_eigenpair(g, p, pair.lam, pair.f)
    tres = tensor_residual(t, pair.lam, pair.f)
    scale = max(1.0, abs(pair.lam)) * g.mu.max()
    assert tres <= scale * res * (1 + 1e-9) + 1e-15
    assert tres <= scale * 1e-9


def test_compare_paths(signed_c4):
    dev_op, dev_naive = compare_paths(signed_c4, 4, 20, seed=1)
    assert dev_op <= 1e-10 and dev_naive <= 1e-12
    dev_op, dev_naive = compare_paths(G.path(30), 6, 5, seed=1)
    assert dev_naive is None and dev_op <= 1e-10
