"""Best-response dynamics and stability of equilibria.

An equilibrium is stable when every small legitimate perturbation (each
coordinate moved by at most ``rho * e*`` and kept non-negative) is pulled back
to it by simultaneous best-response iteration.  Analytic certificates cover
non-specialized equilibria (always unstable), an empty residual graph and
kernels of order two (both stable).  Otherwise the residual game is probed
numerically, which can exhibit instability but never prove stability.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .digraph import Digraph
from .elimination import eliminate, restrict_to_residual
from .game import (
    GameParams,
    as_profile,
    contributors,
    is_nash,
    is_specialized_profile,
)
from .kernels import kernel_order

__all__ = [
    "Analytic",
    "StabilityConfig",
    "Trajectory",
    "DivergenceWitness",
    "StabilityVerdict",
    "iterate_best_response",
    "perturbations",
    "probe_stability",
]


# efforts above this fraction of e* count as "contributing" in perturbation patterns
EQ_ACTIVE = 1e-9


class Analytic(str, enum.Enum):
    STABLE_BY_EMPTY_RESIDUAL = "StableByEmptyResidual"
    STABLE_BY_ORDER2 = "StableByOrder2"
    INHERITED_FROM_RESIDUAL = "InheritedFromResidual"
    NON_SPECIALIZED_UNSTABLE = "NonSpecializedUnstable"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class StabilityConfig:
    rho: float = 0.1
    samples: int = 200
    max_iters: int | None = None
    tol: float = 1e-8
    seed: int = 0

    def __post_init__(self):
        if not self.rho > 0:
            raise ValueError("rho must be positive")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if self.max_iters is not None and self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")

    def iters_for(self, n: int) -> int:
        return self.max_iters if self.max_iters is not None else max(50 * n, 50)


@dataclass
class Trajectory:
    states: np.ndarray  # (steps + 1, n)
    converged: bool

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    @property
    def iterations(self) -> int:
        return len(self.states) - 1


def iterate_best_response(
    g: Digraph, params: GameParams, e0, max_iters: int = 1000, tol: float = 1e-8
) -> Trajectory:
    """Iterate ``e <- f(e)`` simultaneously from ``e0``.

    Stops once no coordinate moves by more than ``tol * e*``.  ``converged``
    reports whether that happened within ``max_iters`` steps; it says nothing
    about *which* fixed point was reached.  An exactly repeated state means a
    periodic orbit, which ends the run early as non-converged.
    """
    e = as_profile(g, e0)
    m = g.matrix if params.spillover == "out" else g.matrix.T
    states = [e]
    seen = {e.tobytes()}
    step_tol = tol * params.e_star
    for _ in range(max_iters):
        nxt = np.maximum(0.0, params.e_star - m @ e)
        change = np.max(np.abs(nxt - e)) if g.n else 0.0
        if change <= step_tol:
            return Trajectory(np.array(states), True)
        states.append(nxt)
        key = nxt.tobytes()
        if key in seen:
            break
        seen.add(key)
        e = nxt
    return Trajectory(np.array(states).reshape(len(states), g.n), False)


@dataclass
class DivergenceWitness:
    index: int
    kind: str
    perturbation: np.ndarray
    trajectory: np.ndarray
    reached_fixed_point: bool

    def to_dict(self, prefix: int | None = 10) -> dict:
        traj = self.trajectory if prefix is None else self.trajectory[:prefix]
        return {
            "index": self.index,
            "kind": self.kind,
            "perturbation": self.perturbation.tolist(),
            "reached_other_fixed_point": self.reached_fixed_point,
            "trajectory": traj.tolist(),
        }


@dataclass
class StabilityVerdict:
    analytic: Analytic
    converged_runs: int
    total_runs: int
    witness: DivergenceWitness | None
    details: dict = field(default_factory=dict)

    @property
    def empirical(self) -> str:
        return "AllConverged" if self.witness is None else "DivergenceWitness"

    @property
    def stable_certified(self) -> bool:
        return self.analytic in (Analytic.STABLE_BY_EMPTY_RESIDUAL, Analytic.STABLE_BY_ORDER2)

    def to_dict(self, trace: bool = False) -> dict:
        doc = {
            "analytic": self.analytic.value,
            "empirical": self.empirical,
            "converged_runs": self.converged_runs,
            "total_runs": self.total_runs,
            "details": self.details,
        }
        if self.witness is not None:
            doc["witness"] = self.witness.to_dict(prefix=None if trace else 10)
        return doc


def perturbations(e: np.ndarray, e_star: float, cfg: StabilityConfig):
    """Yield ``(kind, epsilon)`` pairs: structured patterns, then random draws.

    Every perturbation satisfies ``|eps_i| <= rho * e*`` and ``e_i + eps_i >= 0``.
    """
    n = len(e)
    r = cfg.rho * e_star
    for i in range(n):
        for sign, tag in ((1.0, "+"), (-1.0, "-")):
            eps = np.zeros(n)
            eps[i] = max(sign * r, -e[i])
            if eps[i] != 0.0:
                yield f"single{tag}{i}", eps
    active = e > EQ_ACTIVE * e_star
    if n:
        yield "shift", np.where(active, -np.minimum(r, e), r)
        yield "all+", np.full(n, r)
        down = -np.minimum(r, e)
        if np.any(down):
            yield "all-", down
    children = np.random.SeedSequence(cfg.seed).spawn(cfg.samples)
    for k, child in enumerate(children):
        rng = np.random.default_rng(child)
        eps = rng.uniform(-r, r, size=n)
        yield f"random{k}", np.maximum(eps, -e)


def _run_suite(g: Digraph, params: GameParams, e: np.ndarray, cfg: StabilityConfig):
    max_iters = cfg.iters_for(g.n)
    target_tol = max(100 * cfg.tol, 1e-9) * params.e_star
    ok = 0
    total = 0
    witness = None
    for kind, eps in perturbations(e, params.e_star, cfg):
        traj = iterate_best_response(g, params, e + eps, max_iters=max_iters, tol=cfg.tol)
        total += 1
        back = traj.converged and np.max(np.abs(traj.final - e), initial=0.0) <= target_tol
        if back:
            ok += 1
        elif witness is None:
            witness = DivergenceWitness(total - 1, kind, eps, traj.states, traj.converged)
    return ok, total, witness


def probe_stability(
    g: Digraph, params: GameParams, e, cfg: StabilityConfig | None = None,
    probe: str = "auto",
) -> StabilityVerdict:
    """Classify the stability of a Nash equilibrium.

    Parameters
    ----------
    g, params, e
        The game and the equilibrium; ``e`` must be Nash.
    cfg : StabilityConfig
        Perturbation radius, sample count, iteration cap, tolerance and seed.
    probe : {"auto", "full", "residual"}
        Which game the perturbation suite runs on.  ``"auto"`` uses the
        residual game when the verdict rests on it and the full game
        otherwise.

    Returns
    -------
    StabilityVerdict
        ``analytic`` is one of the :class:`Analytic` members.  The empirical
        part is ``AllConverged`` or carries a :class:`DivergenceWitness`.
    """
    cfg = cfg or StabilityConfig()
    e = as_profile(g, e)
    if not is_nash(g, params, e):
        raise ValueError("profile is not a Nash equilibrium")
    details: dict = {}
    trace = eliminate(g)
    details["residual_nodes"] = list(trace.residual_labels)
    if not is_specialized_profile(params, e):
        analytic = Analytic.NON_SPECIALIZED_UNSTABLE
    else:
        k = contributors(params, e)
        order = kernel_order(g, k)
        details["kernel"] = list(k)
        details["kernel_order"] = order
        if trace.residual_empty:
            analytic = Analytic.STABLE_BY_EMPTY_RESIDUAL
        elif order >= 2:
            analytic = Analytic.STABLE_BY_ORDER2
        elif trace.residual.n < g.n:
            analytic = Analytic.INHERITED_FROM_RESIDUAL
        else:
            analytic = Analytic.UNKNOWN

    on_residual = probe == "residual" or (
        probe == "auto" and analytic == Analytic.INHERITED_FROM_RESIDUAL
    )
    if probe not in ("auto", "full", "residual"):
        raise ValueError(f"unknown probe target {probe!r}")
    if on_residual:
        sub_e = restrict_to_residual(trace, e)
        ok, total, witness = _run_suite(trace.residual, params, sub_e, cfg)
        details["probed"] = "residual"
    else:
        ok, total, witness = _run_suite(g, params, e, cfg)
        details["probed"] = "full"
    return StabilityVerdict(analytic, ok, total, witness, details)
