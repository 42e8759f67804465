"""The public-goods game on a digraph.

Player ``i`` chooses effort ``e_i >= 0`` and earns
``b(e_i + sum_{j in N_i} e_j) - c * e_i`` where ``N_i`` are its out-neighbours.
With ``b`` strictly concave and ``b'(e*) = c`` the best response is
``max(0, e* - sum_{j in N_i} e_j)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .digraph import Digraph
from .kernels import DEFAULT_BUDGET, enumerate_kernels

__all__ = [
    "GameParams",
    "EQ_TOL",
    "as_profile",
    "spillovers",
    "payoff",
    "payoffs",
    "best_response",
    "best_response_map",
    "is_specialized_profile",
    "is_nash",
    "contributors",
    "contributors_to_profile",
    "specialized_equilibria",
    "nash_equilibria_by_support",
    "BudgetExhaustedError",
]

# relative to e*
EQ_TOL = 1e-9


class BudgetExhaustedError(RuntimeError):
    """Kernel search ran out of budget; ``partial`` holds what was found."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


def _log_benefit(c: float, e_star: float) -> Callable[[float], float]:
    scale = (1.0 + e_star) * c

    def b(x):
        return scale * np.log1p(x)

    return b


@dataclass(frozen=True)
class GameParams:
    """Cost, benefit and threshold effort of the game.

    The default benefit is ``(1 + e*) * c * log(1 + x)``, for which
    ``b'(0) = (1 + e*) c > c`` and ``b'(e*) = c``.

    ``spillover="in"`` switches best responses to the transposed convention
    (sum over in-neighbours), for sensitivity checks only.
    """

    c: float = 1.0
    e_star: float = 1.0
    benefit: Callable[[float], float] | None = field(default=None, compare=False)
    spillover: str = "out"

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError("marginal cost c must be positive")
        if not self.e_star > 0:
            raise ValueError("threshold effort e* must be positive")
        if self.spillover not in ("out", "in"):
            raise ValueError("spillover must be 'out' or 'in'")
        if self.benefit is None:
            object.__setattr__(self, "benefit", _log_benefit(self.c, self.e_star))
        self._check_benefit()

    def _check_benefit(self):
        b = self.benefit
        h = 1e-6 * self.e_star
        if abs(float(b(0.0))) > 1e-12:
            raise ValueError("benefit must vanish at 0")
        if not (float(b(h)) - float(b(0.0))) / h > self.c:
            raise ValueError("benefit slope at 0 must exceed c")
        grid = np.linspace(0.0, 4.0 * self.e_star, 17)
        slopes = np.array([(float(b(x + h)) - float(b(x))) / h for x in grid])
        if np.any(slopes <= 0) or np.any(np.diff(slopes) >= 0):
            raise ValueError("benefit must be strictly increasing and strictly concave")
        d = (float(b(self.e_star + h)) - float(b(self.e_star - h))) / (2 * h)
        if not math.isclose(d, self.c, rel_tol=1e-4):
            raise ValueError(f"b'(e*) = {d:.6g} does not match c = {self.c}")

    def tol(self) -> float:
        return EQ_TOL * self.e_star


def as_profile(g: Digraph, e: Sequence[float]) -> np.ndarray:
    arr = np.asarray(e, dtype=float)
    if arr.shape != (g.n,):
        raise ValueError(f"profile has shape {arr.shape}, expected ({g.n},)")
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise ValueError("efforts must be finite and non-negative")
    return arr


def _check_node(g: Digraph, i: int) -> None:
    if not 0 <= i < g.n:
        raise IndexError(f"node {i} out of range for n={g.n}")


def spillovers(g: Digraph, params: GameParams, e) -> np.ndarray:
    """Effort each player receives from its neighbours."""
    e = as_profile(g, e)
    m = g.matrix if params.spillover == "out" else g.matrix.T
    return m @ e


def payoff(g: Digraph, params: GameParams, e, i: int) -> float:
    _check_node(g, i)
    e = as_profile(g, e)
    received = float(g.matrix[i] @ e)
    return float(params.benefit(e[i] + received)) - params.c * e[i]


def payoffs(g: Digraph, params: GameParams, e) -> np.ndarray:
    e = as_profile(g, e)
    return np.array([payoff(g, params, e, i) for i in g.nodes])


def best_response(g: Digraph, params: GameParams, e, i: int) -> float:
    _check_node(g, i)
    return float(best_response_map(g, params, e)[i])


def best_response_map(g: Digraph, params: GameParams, e) -> np.ndarray:
    """All players' best responses at once."""
    return np.maximum(0.0, params.e_star - spillovers(g, params, e))


def is_specialized_profile(params: GameParams, e) -> bool:
    arr = np.asarray(e, dtype=float)
    tol = params.tol()
    return bool(np.all((np.abs(arr) <= tol) | (np.abs(arr - params.e_star) <= tol)))


def is_nash(g: Digraph, params: GameParams, e) -> bool:
    e = as_profile(g, e)
    return bool(np.all(np.abs(best_response_map(g, params, e) - e) <= params.tol()))


def contributors(params: GameParams, e) -> tuple[int, ...]:
    """Players exerting positive effort (beyond tolerance)."""
    arr = np.asarray(e, dtype=float)
    return tuple(int(i) for i in np.flatnonzero(arr > params.tol()))


def contributors_to_profile(g: Digraph, params: GameParams, k: Iterable[int]) -> np.ndarray:
    e = np.zeros(g.n)
    for v in k:
        _check_node(g, v)
        e[v] = params.e_star
    return e


def specialized_equilibria(
    g: Digraph, params: GameParams, budget: int = DEFAULT_BUDGET
) -> list[np.ndarray]:
    """Specialized equilibria, one per kernel, in kernel order.

    Raises ``BudgetExhaustedError`` (carrying the partial list) when the
    kernel search does not complete.
    """
    report = enumerate_kernels(g, budget=budget)
    profiles = [contributors_to_profile(g, params, k) for k in report.kernels]
    if not report.exhaustive:
        raise BudgetExhaustedError(
            f"kernel search exceeded budget of {budget} expansions", partial=profiles
        )
    return profiles


def nash_equilibria_by_support(g: Digraph, params: GameParams) -> list[np.ndarray]:
    """Nash equilibria found by enumerating supports (exponential in n).

    For each support ``S`` solve ``e_i + sum_{j in N_i, j in S} e_j = e*`` on
    ``S`` and keep solutions that are positive on ``S`` and leave every
    player outside ``S`` with spillovers of at least ``e*``.  A support with
    a continuum of equilibria contributes its least-norm member only.
    """
    m = g.matrix if params.spillover == "out" else g.matrix.T
    found = []
    for size in range(g.n + 1):
        for support in itertools.combinations(range(g.n), size):
            s = list(support)
            e = np.zeros(g.n)
            if s:
                a = np.eye(len(s)) + m[np.ix_(s, s)]
                rhs = np.full(len(s), params.e_star)
                sol, *_ = np.linalg.lstsq(a, rhs, rcond=None)
                if not np.allclose(a @ sol, rhs, atol=params.tol()):
                    continue
                if np.any(sol <= params.tol()):
                    continue
                e[s] = sol
            if is_nash(g, params, e):
                found.append(e)
    return found
