import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import digraphs
from oracles import all_kernels
from pubgoods.digraph import Digraph, cycle_parity, symmetrize
from pubgoods.kernels import (
    KernelReport,
    WeightedDigraph,
    enumerate_kernels,
    has_kernel,
    kernel_order,
    verify_kernel,
    verify_weighted_kernel,
)


def test_verify_kernel_examples(three_cycle, two_clique, dag):
    assert not verify_kernel(three_cycle, {0})
    assert verify_kernel(two_clique, {0})
    assert verify_kernel(dag, {2})
    assert not verify_kernel(dag, {0, 1})
    with pytest.raises(IndexError):
        verify_kernel(dag, {3})


def test_enumerate_examples(three_cycle, two_clique, dag):
    r = enumerate_kernels(three_cycle)
    assert r.kernels == [] and r.count == 0 and r.exhaustive
    assert enumerate_kernels(two_clique).kernels == [(0,), (1,)]
    assert enumerate_kernels(dag).kernels == [(2,)]


def test_empty_and_edgeless():
    assert enumerate_kernels(Digraph.empty(0)).kernels == [()]
    assert enumerate_kernels(Digraph.empty(4)).kernels == [(0, 1, 2, 3)]


def test_report_serialization(two_clique):
    doc = enumerate_kernels(two_clique).to_dict()
    assert doc == {"count": 2, "exhaustive": True, "kernels": [[0], [1]]}
    assert KernelReport.from_dict(doc).kernels == [(0,), (1,)]


def test_budget_exhaustion_is_partial():
    g = symmetrize(Digraph.from_edges(12, [(i, (i + 1) % 12) for i in range(12)]))
    full = enumerate_kernels(g)
    partial = enumerate_kernels(g, budget=10)
    assert full.exhaustive and not partial.exhaustive
    assert set(partial.kernels) <= set(full.kernels)
    assert all(verify_kernel(g, k) for k in partial.kernels)


def test_limit_and_has_kernel(two_clique, three_cycle):
    r = enumerate_kernels(two_clique, limit=1)
    assert r.count == 1 and not r.exhaustive
    assert has_kernel(two_clique) is True
    assert has_kernel(three_cycle) is False
    big = symmetrize(Digraph.from_edges(30, [(i, (i + 1) % 30) for i in range(30)]))
    assert has_kernel(big, budget=1) is None


@settings(max_examples=500, deadline=None)
@given(digraphs(max_nodes=7))
def test_enumeration_matches_brute_force(g):
    r = enumerate_kernels(g)
    assert r.exhaustive
    assert r.kernels == all_kernels(g)
    assert r.kernels == sorted(r.kernels)
    assert all(verify_kernel(g, k) for k in r.kernels)


@settings(max_examples=200, deadline=None)
@given(digraphs(max_nodes=7))
def test_existence_mode_agrees(g):
    assert has_kernel(g) == (enumerate_kernels(g).count > 0)


@settings(max_examples=300, deadline=None)
@given(digraphs(max_nodes=8))
def test_parity_conditions(g):
    parity = cycle_parity(g)
    count = enumerate_kernels(g).count
    if parity.is_acyclic:
        assert count == 1
    if not parity.has_odd_cycle:
        assert count >= 1
    if parity.has_even_cycle is False:
        assert count <= 1


@settings(max_examples=200, deadline=None)
@given(digraphs(max_nodes=7))
def test_symmetric_kernels_are_maximal_independent_sets(g):
    s = symmetrize(g)
    adj = s.matrix.astype(bool)
    kernels = set(enumerate_kernels(s).kernels)
    # independent + maximal, checked from scratch
    mis = set()
    for r in range(s.n + 1):
        for sub in itertools.combinations(range(s.n), r):
            inside = np.zeros(s.n, dtype=bool)
            inside[list(sub)] = True
            if adj[np.ix_(inside, inside)].any():
                continue
            if all(adj[v, inside].any() for v in range(s.n) if not inside[v]):
                mis.add(sub)
    assert kernels == mis


def test_kernel_order_examples(two_clique, two_hubs, dag):
    assert kernel_order(two_clique, {0}) == 1
    assert kernel_order(two_hubs, {0, 1}) == 2
    assert kernel_order(dag, {2}) == 1
    assert kernel_order(Digraph.empty(3), {0, 1, 2}) == 3
    with pytest.raises(ValueError):
        kernel_order(dag, {0})


def test_weighted_examples():
    w = np.zeros((3, 3))
    w[1, 0] = 1.0
    assert verify_weighted_kernel(WeightedDigraph(2, w[:2, :2]), {0})
    w2 = np.zeros((3, 3))
    w2[1, 0], w2[1, 2] = 0.4, 0.7
    assert verify_weighted_kernel(WeightedDigraph(3, w2), {0, 2})
    w3 = np.zeros((2, 2))
    w3[1, 0] = 0.4
    assert not verify_weighted_kernel(WeightedDigraph(2, w3), {0})


def test_weighted_rejects_bad_weights():
    with pytest.raises(ValueError):
        WeightedDigraph(2, np.array([[0, -1.0], [0, 0]]))
    with pytest.raises(ValueError):
        WeightedDigraph(2, np.eye(2))


@settings(max_examples=200, deadline=None)
@given(digraphs(max_nodes=6))
def test_weighted_agrees_on_binary_weights(g):
    wg = WeightedDigraph.from_digraph(g)
    assert wg.support() == g
    for r in range(1 << g.n):
        k = [v for v in range(g.n) if r >> v & 1]
        assert verify_weighted_kernel(wg, k) == verify_kernel(g, k)
