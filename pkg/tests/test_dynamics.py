import numpy as np
import pytest

from pubgoods.digraph import Digraph, sample_gnp
from pubgoods.dynamics import (
    Analytic,
    StabilityConfig,
    iterate_best_response,
    perturbations,
    probe_stability,
)
from pubgoods.elimination import eliminate, lift_equilibrium, restrict_to_residual
from pubgoods.game import (
    GameParams,
    contributors,
    is_specialized_profile,
    nash_equilibria_by_support,
    specialized_equilibria,
)
from pubgoods.kernels import kernel_order

P = GameParams()
E = P.e_star


def test_fixed_point_stops_at_zero(two_clique, core_pair8):
    for g, e in ((two_clique, [E, 0]), (core_pair8, [E, 0, 0, 0, E, 0, E, 0])):
        traj = iterate_best_response(g, P, e)
        assert traj.converged and traj.iterations == 0


def test_two_clique_interior_start_is_another_fixed_point(two_clique):
    d = 0.1 * E
    traj = iterate_best_response(two_clique, P, [E - d, d])
    assert traj.converged and traj.iterations == 0
    assert np.allclose(traj.final, [E - d, d])


def test_two_hubs_recover(two_hubs):
    traj = iterate_best_response(two_hubs, P, [E, E, 0.1 * E, 0])
    assert traj.converged and traj.iterations <= 2
    assert np.allclose(traj.final, [E, E, 0, 0])


def test_three_cycle_rotation(three_cycle):
    traj = iterate_best_response(three_cycle, P, [0.6, 0.5, 0.5], max_iters=60)
    assert not traj.converged


def test_config_validation():
    with pytest.raises(ValueError):
        StabilityConfig(rho=0)
    with pytest.raises(ValueError):
        StabilityConfig(samples=0)
    with pytest.raises(ValueError):
        StabilityConfig(tol=-1)
    assert StabilityConfig().iters_for(4) == 200


def test_perturbations_are_legitimate():
    cfg = StabilityConfig(rho=0.3, samples=50, seed=3)
    e = np.array([E, 0, 0.1, 0.5])
    pert = list(perturbations(e, E, cfg))
    assert len([k for k, _ in pert if k.startswith("random")]) == 50
    for _, eps in pert:
        assert np.all(np.abs(eps) <= 0.3 * E + 1e-15)
        assert np.all(e + eps >= 0)


def test_single_arc_stable_by_empty_residual():
    g = Digraph.from_edges(2, [(1, 0)])
    v = probe_stability(g, P, [E, 0])
    assert v.analytic == Analytic.STABLE_BY_EMPTY_RESIDUAL
    assert v.empirical == "AllConverged"
    assert v.details["kernel_order"] == 1


def test_two_clique_divergence(two_clique):
    for e in ([E, 0], [0, E]):
        v = probe_stability(two_clique, P, e)
        assert v.analytic == Analytic.UNKNOWN
        assert v.empirical == "DivergenceWitness"
        assert v.witness.kind.startswith("single")


def test_three_cycle_interior_unstable(three_cycle):
    v = probe_stability(three_cycle, P, [0.5, 0.5, 0.5])
    assert v.analytic == Analytic.NON_SPECIALIZED_UNSTABLE
    assert v.witness is not None and not v.witness.reached_fixed_point


def test_probe_rejects_non_nash(three_cycle):
    with pytest.raises(ValueError):
        probe_stability(three_cycle, P, [E, 0, 0])


def test_core_pair8_inherits_instability(core_pair8):
    for e in specialized_equilibria(core_pair8, P):
        v = probe_stability(core_pair8, P, e)
        assert v.analytic == Analytic.INHERITED_FROM_RESIDUAL
        assert v.details["probed"] == "residual"
        assert v.empirical == "DivergenceWitness"


def test_order_contrast7_contrast(order_contrast7):
    stable = probe_stability(order_contrast7, P, [E, E, 0, 0, 0, E, E])
    assert stable.analytic == Analytic.STABLE_BY_ORDER2
    assert stable.empirical == "AllConverged"
    weak = probe_stability(order_contrast7, P, [0, 0, E, E, E, 0, 0])
    assert weak.analytic == Analytic.UNKNOWN
    assert weak.details["kernel_order"] == 1
    assert weak.empirical == "DivergenceWitness"


def test_verdict_serializes(two_clique):
    doc = probe_stability(two_clique, P, [E, 0], StabilityConfig(samples=5)).to_dict()
    assert doc["analytic"] == "Unknown" and doc["empirical"] == "DivergenceWitness"
    assert doc["total_runs"] == doc["converged_runs"] + (doc["total_runs"] - doc["converged_runs"])
    assert "trajectory" in doc["witness"]


def test_trajectory_range(three_cycle):
    traj = iterate_best_response(three_cycle, P, [1.7, 0.0, 0.3], max_iters=30)
    assert np.all(traj.states[1:] >= 0) and np.all(traj.states[1:] <= E)


def test_nonspecialized_equilibria_are_witnessed():
    rng = np.random.default_rng(11)
    checked = 0
    for _ in range(150):
        n = int(rng.integers(2, 6))
        g = sample_gnp(n, float(rng.uniform(0.2, 0.7)), rng)
        for e in nash_equilibria_by_support(g, P):
            if is_specialized_profile(P, e):
                continue
            v = probe_stability(g, P, e, StabilityConfig(samples=20, seed=1))
            assert v.analytic == Analytic.NON_SPECIALIZED_UNSTABLE
            assert v.witness is not None, (g.edges(), e)
            checked += 1
    assert checked >= 10


def test_order2_kernels_never_diverge():
    rng = np.random.default_rng(5)
    probed = 0
    graphs = 0
    while graphs < 100:
        n = int(rng.integers(3, 11))
        g = sample_gnp(n, float(rng.uniform(0.2, 0.8)), rng)
        eqs = [e for e in specialized_equilibria(g, P) if kernel_order(g, contributors(P, e)) >= 2]
        if not eqs:
            continue
        graphs += 1
        cfg = StabilityConfig(rho=0.4 / n, samples=20, seed=graphs)
        for e in eqs:
            v = probe_stability(g, P, e, cfg, probe="full")
            assert v.witness is None
            probed += 1
    assert probed >= 100


def test_residual_equivalence():
    rng = np.random.default_rng(17)
    compared = 0
    for _ in range(300):
        n = int(rng.integers(3, 8))
        g = sample_gnp(n, float(rng.uniform(0.15, 0.5)), rng)
        t = eliminate(g)
        if t.residual_empty or t.residual.n == g.n:
            continue
        for e_res in specialized_equilibria(t.residual, P):
            e = lift_equilibrium(t, e_res, P)
            cfg = StabilityConfig(samples=30, seed=compared)
            full = probe_stability(g, P, e, cfg, probe="full")
            res = probe_stability(t.residual, P, restrict_to_residual(t, e), cfg, probe="full")
            assert (full.witness is None) == (res.witness is None)
            compared += 1
    assert compared >= 20
