"""Kernels of digraphs: verification, exact enumeration and kernel order.

A kernel is a set ``K`` with no arc (in either direction) between two of its
members such that every node outside ``K`` has an arc into ``K``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .digraph import Digraph, bits, to_mask

__all__ = [
    "KernelReport",
    "WeightedDigraph",
    "verify_kernel",
    "enumerate_kernels",
    "has_kernel",
    "kernel_order",
    "verify_weighted_kernel",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 1_000_000


def _as_mask(g: Digraph, k: Iterable[int]) -> int:
    members = list(k)
    for v in members:
        if not 0 <= v < g.n:
            raise IndexError(f"node {v} out of range for n={g.n}")
    return to_mask(members)


def verify_kernel(g: Digraph, k: Iterable[int]) -> bool:
    mask = _as_mask(g, k)
    for v in bits(mask):
        if (g.out_rows[v] | g.in_rows[v]) & mask:
            return False
    for v in bits(g.full_mask & ~mask):
        if not g.out_rows[v] & mask:
            return False
    return True


@dataclass
class KernelReport:
    """Result of a kernel search.

    ``count`` equals ``len(kernels)``; when ``exhaustive`` is False the search
    ran out of budget (or was stopped early) and ``count`` is a lower bound.
    """

    kernels: list[tuple[int, ...]]
    exhaustive: bool
    expansions: int = 0

    @property
    def count(self) -> int:
        return len(self.kernels)

    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "exhaustive": self.exhaustive,
            "kernels": [list(k) for k in self.kernels],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> KernelReport:
        return cls([tuple(k) for k in doc["kernels"]], bool(doc["exhaustive"]))


class _BudgetExhausted(Exception):
    pass


class _LimitReached(Exception):
    pass


def enumerate_kernels(
    g: Digraph, budget: int = DEFAULT_BUDGET, limit: int | None = None
) -> KernelReport:
    """Enumerate all kernels of ``g`` by backtracking with propagation.

    Nodes are decided in descending total-degree order, trying "in the
    kernel" before "outside".  Putting a node in forces all its neighbours
    out; a branch dies as soon as some outside node has no out-neighbour that
    could still join the kernel.

    Parameters
    ----------
    g : Digraph
    budget : int
        Maximum number of search-tree node expansions.  On exhaustion the
        kernels found so far are returned with ``exhaustive=False``.
    limit : int, optional
        Stop after this many kernels (``exhaustive=False`` if the search was
        cut short).  ``limit=1`` is an existence test.

    Returns
    -------
    KernelReport
        Kernels as ascending tuples, sorted lexicographically.
    """
    n = g.n
    nbr = [g.out_rows[v] | g.in_rows[v] for v in range(n)]
    order = sorted(range(n), key=lambda v: (-(g.out_rows[v].bit_count() + g.in_rows[v].bit_count()), v))
    out_rows = g.out_rows
    found: list[int] = []
    expansions = 0

    def feasible(excluded: int) -> bool:
        possible = ~excluded
        for u in bits(excluded):
            if not out_rows[u] & possible:
                return False
        return True

    def search(depth: int, inside: int, excluded: int) -> None:
        nonlocal expansions
        expansions += 1
        if expansions > budget:
            raise _BudgetExhausted
        while depth < n and excluded >> order[depth] & 1:
            depth += 1
        if depth == n:
            found.append(inside)
            if limit is not None and len(found) >= limit:
                raise _LimitReached
            return
        v = order[depth]
        grow_in = inside | 1 << v
        grow_ex = excluded | nbr[v]
        if feasible(grow_ex):
            search(depth + 1, grow_in, grow_ex)
        ex = excluded | 1 << v
        if feasible(ex):
            search(depth + 1, inside, ex)

    exhaustive = True
    try:
        if feasible(0):
            search(0, 0, 0)
    except (_BudgetExhausted, _LimitReached):
        exhaustive = False
    kernels = sorted(tuple(bits(m)) for m in found)
    return KernelReport(kernels, exhaustive, expansions)


def has_kernel(g: Digraph, budget: int = DEFAULT_BUDGET) -> bool | None:
    """Existence test; ``None`` when the budget ran out undecided."""
    report = enumerate_kernels(g, budget=budget, limit=1)
    if report.count:
        return True
    return False if report.exhaustive else None


def kernel_order(g: Digraph, k: Iterable[int]) -> int:
    """Minimum number of arcs from an outside node into the kernel.

    Returns ``g.n`` when the kernel is the whole node set.
    """
    members = list(k)
    if not verify_kernel(g, members):
        raise ValueError(f"{sorted(members)} is not a kernel")
    mask = to_mask(members)
    outside = list(bits(g.full_mask & ~mask))
    if not outside:
        return g.n
    return min((g.out_rows[v] & mask).bit_count() for v in outside)


@dataclass(frozen=True)
class WeightedDigraph:
    n: int
    w: np.ndarray = field(repr=False)

    def __post_init__(self):
        w = np.asarray(self.w, dtype=float)
        if w.shape != (self.n, self.n):
            raise ValueError(f"weight matrix must be {self.n}x{self.n}")
        if (w < 0).any():
            raise ValueError("weights must be non-negative")
        if np.any(np.diag(w) != 0):
            raise ValueError("weight matrix must have a zero diagonal")
        object.__setattr__(self, "w", w)

    @classmethod
    def from_digraph(cls, g: Digraph) -> WeightedDigraph:
        return cls(g.n, np.array(g.matrix))

    def support(self) -> Digraph:
        return Digraph.from_matrix(self.w > 0)


def verify_weighted_kernel(g: WeightedDigraph, k: Iterable[int]) -> bool:
    """Independent in the support digraph, and every outsider's total weight
    into the set is at least 1."""
    members = sorted(set(k))
    for v in members:
        if not 0 <= v < g.n:
            raise IndexError(f"node {v} out of range for n={g.n}")
    inside = np.zeros(g.n, dtype=bool)
    inside[members] = True
    block = g.w[np.ix_(inside, inside)]
    if (block > 0).any():
        return False
    coverage = g.w[~inside][:, inside].sum(axis=1)
    # absorb rounding in sums such as 0.1 + 0.2 + 0.7
    return bool((coverage >= 1.0 - 1e-12).all())
