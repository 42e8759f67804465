"""Iterative node elimination and lifting of equilibria from the residual graph.

Each round removes, on the current graph:

1. ``I``   -- nodes with no out-neighbours (they must contribute),
2. ``I'``  -- nodes with an out-neighbour in ``I`` (they free-ride),

then, on what is left after dropping ``I | I'``,

3. ``I''`` -- nodes with no in-neighbours (nobody depends on them).

Rounds repeat until nothing changes.  All labels in the trace are labels of
the original graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .digraph import Digraph, bits, to_mask
from .game import GameParams, as_profile, is_nash, is_specialized_profile

__all__ = [
    "EliminationRound",
    "EliminationTrace",
    "eliminate",
    "lift_equilibrium",
    "restrict_to_residual",
]


@dataclass(frozen=True)
class EliminationRound:
    I: tuple[int, ...]
    I_prime: tuple[int, ...]
    I_dprime: tuple[int, ...]

    def removed(self) -> tuple[int, ...]:
        return tuple(sorted(self.I + self.I_prime + self.I_dprime))

    def to_dict(self) -> dict:
        return {"I": list(self.I), "I_prime": list(self.I_prime), "I_dprime": list(self.I_dprime)}


@dataclass
class EliminationTrace:
    graph: Digraph
    rounds: list[EliminationRound]
    residual: Digraph
    residual_labels: tuple[int, ...]
    label_map: dict[int, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.label_map = {old: new for new, old in enumerate(self.residual_labels)}

    @property
    def forced_contributors(self) -> tuple[int, ...]:
        return tuple(sorted(v for r in self.rounds for v in r.I))

    @property
    def forced_freeriders(self) -> tuple[int, ...]:
        return tuple(sorted(v for r in self.rounds for v in r.I_prime))

    @property
    def irrelevant(self) -> tuple[int, ...]:
        return tuple(sorted(v for r in self.rounds for v in r.I_dprime))

    @property
    def residual_empty(self) -> bool:
        return self.residual.n == 0

    def to_dict(self) -> dict:
        return {
            "n": self.graph.n,
            "iterations": [r.to_dict() for r in self.rounds],
            "residual_labels": list(self.residual_labels),
            "residual": self.residual.to_dict(),
        }

    @classmethod
    def from_dict(cls, doc: dict, graph: Digraph) -> EliminationTrace:
        rounds = [
            EliminationRound(tuple(r["I"]), tuple(r["I_prime"]), tuple(r["I_dprime"]))
            for r in doc["iterations"]
        ]
        residual = Digraph.from_edges(doc["residual"]["n"], map(tuple, doc["residual"]["edges"]))
        return cls(graph, rounds, residual, tuple(doc["residual_labels"]))


def eliminate(g: Digraph) -> EliminationTrace:
    alive = g.full_mask
    rounds = []
    while True:
        I = [v for v in bits(alive) if not g.out_rows[v] & alive]
        i_mask = to_mask(I)
        I_prime = [v for v in bits(alive) if g.out_rows[v] & i_mask]
        alive &= ~(i_mask | to_mask(I_prime))
        I_dprime = [v for v in bits(alive) if not g.in_rows[v] & alive]
        alive &= ~to_mask(I_dprime)
        if not (I or I_prime or I_dprime):
            break
        rounds.append(EliminationRound(tuple(I), tuple(I_prime), tuple(I_dprime)))
    residual, labels = g.induced(bits(alive))
    return EliminationTrace(g, rounds, residual, labels)


def restrict_to_residual(trace: EliminationTrace, e) -> np.ndarray:
    e = as_profile(trace.graph, e)
    return e[list(trace.residual_labels)]


def lift_equilibrium(trace: EliminationTrace, residual_e, params: GameParams) -> np.ndarray:
    """Extend a specialized equilibrium of the residual game to the full graph.

    Forced contributors get ``e*``, forced free-riders ``0``, residual nodes
    keep their residual effort, and each ``I''`` node takes its best
    specialized reply to the others, replayed from the last round back to the
    first so that its out-neighbours are already fixed.
    """
    residual_e = as_profile(trace.residual, residual_e)
    if not (is_specialized_profile(params, residual_e) and is_nash(trace.residual, params, residual_e)):
        raise ValueError("residual profile is not a specialized equilibrium of the residual game")
    g = trace.graph
    e = np.zeros(g.n)
    e[list(trace.residual_labels)] = np.where(residual_e > params.e_star / 2, params.e_star, 0.0)
    for r in trace.rounds:
        e[list(r.I)] = params.e_star
        e[list(r.I_prime)] = 0.0
    for r in reversed(trace.rounds):
        for v in r.I_dprime:
            received = sum(e[j] for j in bits(g.out_rows[v]))
            e[v] = 0.0 if received >= params.e_star else params.e_star
    return e
