"""Specialized equilibria as one-way arcs become reciprocal."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .digraph import Digraph, bits, is_subgraph, is_symmetric, symmetrize, to_mask
from .game import GameParams, best_response_map, contributors_to_profile, is_nash
from .kernels import DEFAULT_BUDGET, enumerate_kernels, verify_kernel

__all__ = [
    "is_partial_symmetrization",
    "check_monotonicity",
    "persistence_matrix",
    "orient_from_mis",
    "InteriorCounterexample",
    "counterexample_interior",
]


def is_partial_symmetrization(g: Digraph, ghat: Digraph) -> bool:
    return is_subgraph(g, ghat) and is_subgraph(ghat, symmetrize(g))


def _require_ps(g: Digraph, ghat: Digraph) -> None:
    if not is_partial_symmetrization(g, ghat):
        raise ValueError("second graph is not a partial symmetrization of the first")


def check_monotonicity(
    g: Digraph, ghat: Digraph, params: GameParams, budget: int = DEFAULT_BUDGET
) -> bool:
    """True iff every specialized equilibrium of ``g`` is Nash on ``ghat``."""
    _require_ps(g, ghat)
    report = enumerate_kernels(g, budget=budget)
    return all(
        is_nash(ghat, params, contributors_to_profile(g, params, k)) for k in report.kernels
    )


def persistence_matrix(
    g: Digraph, others: Sequence[Digraph], params: GameParams, budget: int = DEFAULT_BUDGET
) -> tuple[list[tuple[int, ...]], np.ndarray]:
    """Kernels of ``g`` and, per kernel and per graph, whether its profile is
    still an equilibrium there."""
    for h in others:
        _require_ps(g, h)
    kernels = enumerate_kernels(g, budget=budget).kernels
    table = np.zeros((len(kernels), len(others)), dtype=bool)
    for a, k in enumerate(kernels):
        e = contributors_to_profile(g, params, k)
        for b, h in enumerate(others):
            table[a, b] = is_nash(h, params, e)
    return kernels, table


def orient_from_mis(gbar: Digraph, k: Iterable[int]) -> Digraph:
    """Strict digraph with symmetrization ``gbar`` in which ``k`` is a kernel.

    Cross edges point from the free-rider to the contributor; edges between
    two free-riders point from the higher label to the lower one.
    """
    if not is_symmetric(gbar):
        raise ValueError("graph must be symmetric")
    members = sorted(set(k))
    # on symmetric graphs kernels are exactly the maximal independent sets
    if not verify_kernel(gbar, members):
        raise ValueError(f"{members} is not a maximal independent set")
    mask = to_mask(members)
    rows = [0] * gbar.n
    for i in range(gbar.n):
        if mask >> i & 1:
            continue
        for j in bits(gbar.out_rows[i]):
            if mask >> j & 1 or j < i:
                rows[i] |= 1 << j
    return Digraph(gbar.n, tuple(rows))


@dataclass(frozen=True)
class InteriorCounterexample:
    graph: Digraph
    symmetrized: Digraph
    profile: np.ndarray
    is_nash_on_G: bool
    is_nash_on_sG: bool
    best_response_on_sG: np.ndarray


def counterexample_interior(params: GameParams | None = None) -> InteriorCounterexample:
    """The 3-cycle's interior equilibrium ``e*/2`` everywhere stops being an
    equilibrium once all three arcs are made reciprocal."""
    params = params or GameParams()
    g = Digraph.from_edges(3, [(0, 1), (1, 2), (2, 0)])
    sg = symmetrize(g)
    e = np.full(3, params.e_star / 2)
    return InteriorCounterexample(
        graph=g,
        symmetrized=sg,
        profile=e,
        is_nash_on_G=is_nash(g, params, e),
        is_nash_on_sG=is_nash(sg, params, e),
        best_response_on_sG=best_response_map(sg, params, e),
    )
