"""Directed graphs stored as integer bit rows.

Nodes are labelled ``0..n-1``.  ``out_rows[i]`` has bit ``j`` set iff there
is an arc ``i -> j``, i.e. player ``i`` benefits from player ``j``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

__all__ = [
    "Digraph",
    "GraphFormatError",
    "CycleParityReport",
    "CapExceededError",
    "parse_digraph",
    "parse_json_digraph",
    "out_neighbors",
    "in_neighbors",
    "strongly_connected_components",
    "is_acyclic",
    "simple_cycles",
    "cycle_parity",
    "symmetrize",
    "is_symmetric",
    "is_subgraph",
    "one_way_arcs",
    "partial_symmetrizations",
    "sample_partial_symmetrizations",
    "sample_gnp",
    "bits",
    "to_mask",
]


class GraphFormatError(ValueError):
    """Raised for malformed graph documents; ``lineno`` is 1-based or None."""

    def __init__(self, message: str, lineno: int | None = None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class CapExceededError(ValueError):
    pass


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(nodes: Iterable[int]) -> int:
    mask = 0
    for v in nodes:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Digraph:
    """Immutable simple digraph (no self-loops, no parallel arcs)."""

    n: int
    out_rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("node count must be non-negative")
        if len(self.out_rows) != self.n:
            raise ValueError(f"expected {self.n} rows, got {len(self.out_rows)}")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.out_rows):
            if row & ~full:
                raise ValueError(f"row {i} references a node outside 0..{self.n - 1}")
            if row >> i & 1:
                raise ValueError(f"self-loop at node {i}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Digraph:
        rows = [0] * n
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
        return cls(n, tuple(rows))

    @classmethod
    def from_matrix(cls, adj) -> Digraph:
        a = np.asarray(adj)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency must be a square matrix")
        n = a.shape[0]
        return cls.from_edges(n, zip(*np.nonzero(a)))

    @classmethod
    def empty(cls, n: int) -> Digraph:
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> Digraph:
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << i) for i in range(n)))

    @cached_property
    def in_rows(self) -> tuple[int, ...]:
        rows = [0] * self.n
        for i, row in enumerate(self.out_rows):
            for j in bits(row):
                rows[j] |= 1 << i
        return tuple(rows)

    @cached_property
    def matrix(self) -> np.ndarray:
        """Dense 0/1 float adjacency, ``matrix[i, j] == g_ij``."""
        m = np.zeros((self.n, self.n))
        for i, j in self.edges():
            m[i, j] = 1.0
        m.setflags(write=False)
        return m

    @property
    def nodes(self) -> range:
        return range(self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.out_rows) for j in bits(row)]

    def num_arcs(self) -> int:
        return sum(row.bit_count() for row in self.out_rows)

    def has_arc(self, i: int, j: int) -> bool:
        return bool(self.out_rows[i] >> j & 1)

    def induced(self, nodes: Iterable[int]) -> tuple[Digraph, tuple[int, ...]]:
        """Subgraph induced by ``nodes``, relabelled ``0..m-1`` in ascending order.

        Returns the subgraph and the tuple mapping new labels to old ones.
        """
        labels = tuple(sorted(set(nodes)))
        index = {v: k for k, v in enumerate(labels)}
        rows = []
        for v in labels:
            row = 0
            for j in bits(self.out_rows[v]):
                if j in index:
                    row |= 1 << index[j]
            rows.append(row)
        return Digraph(len(labels), tuple(rows)), labels

    # serialization

    def to_edgelist(self) -> str:
        lines = [str(self.n)]
        lines.extend(f"{u} {v}" for u, v in self.edges())
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [[u, v] for u, v in self.edges()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_dot(self, name: str = "G", highlight: Iterable[int] = ()) -> str:
        marked = set(highlight)
        out = [f"digraph {name} {{"]
        for v in self.nodes:
            style = " [style=filled, fillcolor=lightgrey]" if v in marked else ""
            out.append(f"  {v}{style};")
        out.extend(f"  {u} -> {v};" for u, v in self.edges())
        out.append("}")
        return "\n".join(out) + "\n"


def _check_edges(n: int, edges: Iterable[tuple[int, int, int | None]]) -> Digraph:
    rows = [0] * n
    for u, v, lineno in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"endpoint out of range 0..{n - 1}: {u} {v}", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at node {u}", lineno)
        if rows[u] >> v & 1:
            raise GraphFormatError(f"duplicate arc {u} {v}", lineno)
        rows[u] |= 1 << v
    return Digraph(n, tuple(rows))


def parse_digraph(text: str) -> Digraph:
    """Parse the edge-list format.

    The first non-comment line holds ``n``; each further non-empty line is
    ``u v`` for the arc ``u -> v``.  Lines starting with ``#`` are ignored.
    """
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        try:
            values = [int(f) for f in fields]
        except ValueError:
            raise GraphFormatError(f"expected integers, got {line!r}", lineno) from None
        if n is None:
            if len(values) != 1 or values[0] < 0:
                raise GraphFormatError("first line must be a non-negative node count", lineno)
            n = values[0]
            continue
        if len(values) != 2:
            raise GraphFormatError(f"expected 'u v', got {line!r}", lineno)
        edges.append((values[0], values[1], lineno))
    if n is None:
        raise GraphFormatError("missing node count")
    return _check_edges(n, edges)


def parse_json_digraph(text: str) -> Digraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(doc, dict) or "n" not in doc:
        raise GraphFormatError("JSON graph must be an object with 'n' and 'edges'")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise GraphFormatError("'n' must be a non-negative integer")
    edges = []
    for k, e in enumerate(doc.get("edges", [])):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise GraphFormatError(f"edge #{k} must be a pair of integers")
        edges.append((e[0], e[1], None))
    return _check_edges(n, edges)


def _check_node(g: Digraph, i: int) -> None:
    if not 0 <= i < g.n:
        raise IndexError(f"node {i} out of range for n={g.n}")


def out_neighbors(g: Digraph, i: int) -> frozenset[int]:
    _check_node(g, i)
    return frozenset(bits(g.out_rows[i]))


def in_neighbors(g: Digraph, i: int) -> frozenset[int]:
    _check_node(g, i)
    return frozenset(bits(g.in_rows[i]))


def strongly_connected_components(g: Digraph) -> list[frozenset[int]]:
    """Tarjan's algorithm, iterative.

    Components come out in topological order of the condensation (a component
    precedes every component it has arcs into); ties follow the smallest label.
    """
    index = [-1] * g.n
    low = [0] * g.n
    on_stack = [False] * g.n
    stack: list[int] = []
    found: list[frozenset[int]] = []
    counter = 0

    for root in g.nodes:
        if index[root] >= 0:
            continue
        work = [(root, iter(bits(g.out_rows[root])))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, children = work[-1]
            advanced = False
            for w in children:
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(bits(g.out_rows[w]))))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.add(w)
                    if w == v:
                        break
                found.append(frozenset(comp))
    # Tarjan emits sinks first
    found.reverse()
    return found


def is_acyclic(g: Digraph) -> bool:
    """Kahn's algorithm: True iff a topological order exists."""
    indeg = [row.bit_count() for row in g.in_rows]
    ready = [v for v in g.nodes if indeg[v] == 0]
    seen = 0
    while ready:
        v = ready.pop()
        seen += 1
        for w in bits(g.out_rows[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return seen == g.n


def simple_cycles(g: Digraph) -> Iterator[list[int]]:
    """Johnson's algorithm.  Each simple cycle is yielded once, rooted at
    its smallest node."""
    for root in g.nodes:
        # restrict to the SCC of root within nodes >= root
        allowed = g.full_mask & ~((1 << root) - 1)
        sub, labels = g.induced(bits(allowed))
        comp = None
        for c in strongly_connected_components(sub):
            if 0 in c:
                comp = c
                break
        if comp is None or len(comp) == 1 and not (sub.out_rows[0] & 1):
            continue
        comp_mask = to_mask(labels[k] for k in comp)
        yield from _johnson_from(g, root, comp_mask)


def _johnson_from(g: Digraph, s: int, allowed: int) -> Iterator[list[int]]:
    blocked = 1 << s
    blocked_by: dict[int, set[int]] = {}
    path = [s]
    # stack frames: (node, remaining successors mask, found-cycle flag)
    frames = [[s, g.out_rows[s] & allowed, False]]
    while frames:
        frame = frames[-1]
        v, succ, _ = frame
        if succ:
            w = (succ & -succ).bit_length() - 1
            frame[1] = succ & ~(1 << w)
            if w == s:
                yield list(path)
                frame[2] = True
            elif not blocked >> w & 1:
                blocked |= 1 << w
                path.append(w)
                frames.append([w, g.out_rows[w] & allowed, False])
            continue
        frames.pop()
        path.pop()
        if frame[2]:
            # unblock v and everything waiting on it
            todo = [v]
            while todo:
                u = todo.pop()
                if blocked >> u & 1:
                    blocked &= ~(1 << u)
                    todo.extend(blocked_by.pop(u, ()))
        else:
            for w in bits(g.out_rows[v] & allowed):
                blocked_by.setdefault(w, set()).add(v)
        if frames:
            frames[-1][2] = frames[-1][2] or frame[2]


@dataclass(frozen=True)
class CycleParityReport:
    is_acyclic: bool
    has_odd_cycle: bool
    has_even_cycle: bool | None
    enumerated: bool

    @property
    def decided(self) -> bool:
        return self.has_even_cycle is not None

    @property
    def all_cycles_odd(self) -> bool | None:
        return None if self.has_even_cycle is None else not self.has_even_cycle

    @property
    def all_cycles_even(self) -> bool:
        return not self.has_odd_cycle


def _has_odd_closed_walk(g: Digraph, comp: frozenset[int]) -> bool:
    # 2-colour the SCC so that every internal arc flips colour
    mask = to_mask(comp)
    colour = {}
    for start in comp:
        if start in colour:
            continue
        colour[start] = 0
        todo = [start]
        while todo:
            v = todo.pop()
            for w in bits((g.out_rows[v] | g.in_rows[v]) & mask):
                if w not in colour:
                    colour[w] = colour[v] ^ 1
                    todo.append(w)
                elif colour[w] == colour[v]:
                    return True
    return False


def cycle_parity(g: Digraph, exhaustive_limit: int = 100_000) -> CycleParityReport:
    """Classify the directed cycles of ``g`` by parity.

    Odd cycles are detected exactly by 2-colouring each strongly connected
    component.  When no odd cycle exists, any cycle is even, so enumeration is
    only needed when ``g`` has an odd cycle; then simple cycles are enumerated
    until an even one appears or ``exhaustive_limit`` cycles have been seen,
    in which case ``has_even_cycle`` is ``None``.
    """
    comps = [c for c in strongly_connected_components(g) if len(c) > 1]
    acyclic = not comps
    if acyclic:
        return CycleParityReport(True, False, False, enumerated=False)
    odd = any(_has_odd_closed_walk(g, c) for c in comps)
    if not odd:
        return CycleParityReport(False, False, True, enumerated=False)
    for k, cyc in enumerate(simple_cycles(g)):
        if k >= exhaustive_limit:
            return CycleParityReport(False, True, None, enumerated=False)
        if len(cyc) % 2 == 0:
            return CycleParityReport(False, True, True, enumerated=True)
    return CycleParityReport(False, True, False, enumerated=True)


def symmetrize(g: Digraph) -> Digraph:
    return Digraph(g.n, tuple(o | i for o, i in zip(g.out_rows, g.in_rows)))


def is_symmetric(g: Digraph) -> bool:
    return g.out_rows == g.in_rows


def is_subgraph(g: Digraph, h: Digraph) -> bool:
    """True iff every arc of ``g`` is an arc of ``h`` (same node set)."""
    return g.n == h.n and all(a & ~b == 0 for a, b in zip(g.out_rows, h.out_rows))


def one_way_arcs(g: Digraph) -> list[tuple[int, int]]:
    """Arcs ``(u, v)`` whose reverse ``v -> u`` is absent."""
    return [(u, v) for u, v in g.edges() if not g.has_arc(v, u)]


def _add_reversals(g: Digraph, arcs: Iterable[tuple[int, int]]) -> Digraph:
    rows = list(g.out_rows)
    for u, v in arcs:
        rows[v] |= 1 << u
    return Digraph(g.n, tuple(rows))


def partial_symmetrizations(g: Digraph, cap: int = 256) -> list[Digraph]:
    """Every digraph between ``g`` and ``symmetrize(g)``, arc-wise.

    The first element is ``g`` itself and the last is its symmetrization.
    Raises ``CapExceededError`` when there would be more than ``cap``.
    """
    arcs = one_way_arcs(g)
    if 2 ** len(arcs) > cap:
        raise CapExceededError(
            f"{len(arcs)} one-way arcs give {2 ** len(arcs)} partial symmetrizations (cap {cap})"
        )
    out = []
    for r in range(len(arcs) + 1):
        for subset in itertools.combinations(arcs, r):
            out.append(_add_reversals(g, subset))
    return out


def sample_partial_symmetrizations(g: Digraph, count: int, seed=None) -> list[Digraph]:
    rng = np.random.default_rng(seed)
    arcs = one_way_arcs(g)
    out = []
    for _ in range(count):
        pick = rng.random(len(arcs)) < 0.5
        out.append(_add_reversals(g, (a for a, keep in zip(arcs, pick) if keep)))
    return out


def sample_gnp(n: int, p: float, seed=None) -> Digraph:
    """Sample from G(n, p): each ordered pair ``i != j`` is an arc with
    probability ``p``, independently.  ``seed`` may be an int or a Generator."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    adj = rng.random((n, n)) < p
    np.fill_diagonal(adj, False)
    return Digraph.from_matrix(adj)
