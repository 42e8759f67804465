import numpy as np
import pytest
from hypothesis import given, settings

from conftest import digraphs
from pubgoods.digraph import Digraph, is_acyclic
from pubgoods.elimination import EliminationTrace, eliminate, lift_equilibrium, restrict_to_residual
from pubgoods.game import GameParams, is_nash, is_specialized_profile, specialized_equilibria
from pubgoods.kernels import enumerate_kernels

P = GameParams()
E = P.e_star


def test_dag_single_round(dag):
    t = eliminate(dag)
    assert [(r.I, r.I_prime, r.I_dprime) for r in t.rounds] == [((2,), (0, 1), ())]
    assert t.residual_empty


def test_core_pair8_trace(core_pair8):
    # 0-indexed; in player labels: I={5}, I'={4,6}, I''={3}; then I={7}, I'={8}
    t = eliminate(core_pair8)
    assert [(r.I, r.I_prime, r.I_dprime) for r in t.rounds] == [
        ((4,), (3, 5), (2,)),
        ((6,), (7,), ()),
    ]
    assert t.residual_labels == (0, 1)
    assert sorted(t.residual.edges()) == [(0, 1), (1, 0)]
    assert t.forced_contributors == (4, 6)
    assert t.forced_freeriders == (3, 5, 7)
    assert t.irrelevant == (2,)


def test_two_clique_is_fixed(two_clique):
    t = eliminate(two_clique)
    assert t.rounds == [] and t.residual == two_clique


def test_core_pair8_lifting(core_pair8):
    t = eliminate(core_pair8)
    assert lift_equilibrium(t, [E, 0], P).tolist() == [E, 0, 0, 0, E, 0, E, 0]
    assert lift_equilibrium(t, [0, E], P).tolist() == [0, E, 0, 0, E, 0, E, 0]


def test_lift_empty_residual(dag):
    t = eliminate(dag)
    assert lift_equilibrium(t, [], P).tolist() == [0, 0, E]


def test_lift_rejects_non_equilibrium(core_pair8):
    t = eliminate(core_pair8)
    with pytest.raises(ValueError):
        lift_equilibrium(t, [E, E], P)
    with pytest.raises(ValueError):
        lift_equilibrium(t, [0.5, 0.5], P)


def test_trace_roundtrip(core_pair8):
    t = eliminate(core_pair8)
    back = EliminationTrace.from_dict(t.to_dict(), core_pair8)
    assert back.rounds == t.rounds and back.residual == t.residual
    assert back.residual_labels == t.residual_labels


def test_restrict(core_pair8):
    t = eliminate(core_pair8)
    assert restrict_to_residual(t, [E, 0, 0, 0, E, 0, E, 0]).tolist() == [E, 0]


@settings(max_examples=400, deadline=None)
@given(digraphs(max_nodes=7))
def test_trace_invariants(g):
    t = eliminate(g)
    removed = [v for r in t.rounds for v in r.removed()]
    assert len(removed) == len(set(removed))
    assert not set(removed) & set(t.residual_labels)
    assert sorted(removed + list(t.residual_labels)) == list(range(g.n))
    for r in t.rounds:
        assert not set(r.I) & set(r.I_prime)
    res = t.residual
    for v in res.nodes:
        assert res.out_rows[v], "residual node without out-neighbour"
        assert res.in_rows[v], "residual node without in-neighbour"
        for w in range(res.n):
            if res.has_arc(v, w):
                assert res.out_rows[w]
    again = eliminate(res)
    assert again.rounds == [] and again.residual == res


@settings(max_examples=400, deadline=None)
@given(digraphs(max_nodes=7))
def test_counts_and_lifting(g):
    t = eliminate(g)
    full = enumerate_kernels(g).count
    if t.residual_empty:
        assert full == 1
    else:
        assert full == enumerate_kernels(t.residual).count
    lifted = []
    for e in specialized_equilibria(t.residual, P):
        up = lift_equilibrium(t, e, P)
        assert is_nash(g, P, up) and is_specialized_profile(P, up)
        lifted.append(tuple(up))
    assert len(lifted) == len(set(lifted))


@settings(max_examples=200, deadline=None)
@given(digraphs(max_nodes=7))
def test_acyclic_graphs_vanish(g):
    if is_acyclic(g):
        assert eliminate(g).residual_empty


def test_lift_uses_later_assignments():
    # 0 -> 1 <-> 2 cycle residual with 0 hanging off; 0 has no in-neighbour
    g = Digraph.from_edges(3, [(0, 1), (1, 2), (2, 1)])
    t = eliminate(g)
    assert t.residual_labels == (1, 2) and t.irrelevant == (0,)
    assert lift_equilibrium(t, [E, 0], P).tolist() == [0, E, 0]
    assert lift_equilibrium(t, [0, E], P).tolist() == [E, 0, E]
    assert np.all([is_nash(g, P, lift_equilibrium(t, e, P)) for e in ([E, 0], [0, E])])
