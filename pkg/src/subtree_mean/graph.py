"""Labeled loopless multigraphs with edge multiplicities."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Base class for invalid graph operations."""


class LoopError(GraphError):
    pass


class MissingEdgeError(GraphError):
    pass


class UnsupportedGraphError(GraphError):
    """The operation is defined for simple graphs only."""


class GraphSizeError(GraphError):
    pass


@dataclass(frozen=True, order=True)
class Edge:
    """One copy of the edge ``{u, v}``; ``copy`` distinguishes parallel edges."""

    u: int
    v: int
    copy: int = 0

    def __post_init__(self):
        if self.u == self.v:
            raise LoopError(f"loop at vertex {self.u}")
        if self.u > self.v:
            a, b = self.v, self.u
            object.__setattr__(self, "u", a)
            object.__setattr__(self, "v", b)
        if self.copy < 0:
            raise GraphError("negative copy index")


@dataclass(frozen=True)
class MultiGraph:
    """Loopless multigraph on vertices ``0..n-1``.

    Stored as a sorted tuple of ``(u, v, multiplicity)`` with ``u < v``;
    the dense multiplicity matrix ``mult`` is derived on first use, so
    trees with thousands of vertices stay cheap. Instances are immutable
    and every mutation returns a new graph.
    """

    n: int
    edge_mults: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("negative vertex count")
        prev = None
        for u, v, k in self.edge_mults:
            _check_vertex(self.n, u)
            _check_vertex(self.n, v)
            if u == v:
                raise LoopError(f"loop at vertex {u}")
            if u > v or k < 1 or (prev is not None and (u, v) <= prev):
                raise GraphError("edge_mults must be sorted (u, v, k) with u < v, k >= 1, no repeats")
            prev = (u, v)

    @classmethod
    def empty(cls, n: int) -> MultiGraph:
        return cls(n, ())

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> MultiGraph:
        """Build from ``(u, v)`` pairs or ``(u, v, multiplicity)`` triples."""
        acc: dict[tuple[int, int], int] = {}
        for e in edges:
            u, v = e[0], e[1]
            k = e[2] if len(e) > 2 else 1
            _check_vertex(n, u)
            _check_vertex(n, v)
            if u == v:
                raise LoopError(f"loop at vertex {u}")
            if k < 0:
                raise GraphError(f"negative multiplicity on ({u}, {v})")
            key = (u, v) if u < v else (v, u)
            acc[key] = acc.get(key, 0) + k
        return cls(n, tuple((u, v, k) for (u, v), k in sorted(acc.items()) if k))

    @classmethod
    def from_matrix(cls, mult: Sequence[Sequence[int]]) -> MultiGraph:
        n = len(mult)
        for i in range(n):
            if len(mult[i]) != n:
                raise GraphError("multiplicity matrix is not square")
            if mult[i][i]:
                raise LoopError(f"loop at vertex {i}")
            for j in range(i + 1, n):
                if mult[i][j] != mult[j][i]:
                    raise GraphError(f"asymmetric multiplicity at ({i}, {j})")
        return cls.from_edges(n, [(i, j, mult[i][j]) for i in range(n)
                                  for j in range(i + 1, n) if mult[i][j]])

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.n}, edges={list(self.edge_mults)})"

    @cached_property
    def mult(self) -> tuple[tuple[int, ...], ...]:
        """Dense symmetric multiplicity matrix."""
        rows = [[0] * self.n for _ in range(self.n)]
        for u, v, k in self.edge_mults:
            rows[u][v] = rows[v][u] = k
        return tuple(map(tuple, rows))

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Sorted neighbour lists (each neighbour once, whatever the multiplicity)."""
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v, _ in self.edge_mults:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(x)) for x in nbrs)

    def multiplicity(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        for a, b, k in self.edge_mults:
            if (a, b) == (u, v):
                return k
        return 0

    @property
    def is_simple(self) -> bool:
        return all(k == 1 for _, _, k in self.edge_mults)

    @property
    def num_edges(self) -> int:
        return sum(k for _, _, k in self.edge_mults)

    def edge_list(self) -> list[tuple[int, int, int]]:
        """``(u, v, multiplicity)`` for every adjacent pair, ``u < v``."""
        return list(self.edge_mults)

    def edges(self) -> Iterator[Edge]:
        """Every edge copy, parallel edges listed separately."""
        for u, v, k in self.edge_mults:
            for c in range(k):
                yield Edge(u, v, c)

    def degree(self, v: int) -> int:
        return sum(k for a, b, k in self.edge_mults if a == v or b == v)

    def neighbors(self, v: int) -> list[int]:
        return list(self.adjacency[v])

    def adjacency_masks(self) -> list[int]:
        return [sum(1 << w for w in row) for row in self.adjacency]

    # -- JSON interchange ------------------------------------------------
    def to_json_obj(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edge_list()]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: dict) -> MultiGraph:
        try:
            n = int(obj["n"])
            edges = obj["edges"]
        except (KeyError, TypeError) as exc:
            raise GraphError(f"bad multigraph JSON: {exc}") from exc
        seen = set()
        for e in edges:
            if len(e) != 3 or e[0] >= e[1] or e[2] < 1:
                raise GraphError(f"bad edge entry {e!r}: need [u, v, k] with u < v, k >= 1")
            if (e[0], e[1]) in seen:
                raise GraphError(f"duplicate edge entry {e!r}")
            seen.add((e[0], e[1]))
        return cls.from_edges(n, edges)

    @classmethod
    def from_json(cls, text: str) -> MultiGraph:
        return cls.from_json_obj(json.loads(text))


def _check_vertex(n: int, v: int) -> None:
    if not 0 <= v < n:
        raise IndexError(f"vertex {v} out of range for graph of order {n}")


def _with_mult(g: MultiGraph, u: int, v: int, delta: int) -> MultiGraph:
    if u > v:
        u, v = v, u
    acc = {(a, b): k for a, b, k in g.edge_mults}
    acc[(u, v)] = acc.get((u, v), 0) + delta
    if acc[(u, v)] < 0:
        raise MissingEdgeError(f"edge ({u}, {v}) not present")
    return MultiGraph(g.n, tuple((a, b, k) for (a, b), k in sorted(acc.items()) if k))


def add_edge(g: MultiGraph, u: int, v: int) -> MultiGraph:
    _check_vertex(g.n, u)
    _check_vertex(g.n, v)
    if u == v:
        raise LoopError(f"cannot add a loop at vertex {u}")
    return _with_mult(g, u, v, 1)


def delete_edge(g: MultiGraph, e: Edge | tuple[int, int]) -> MultiGraph:
    """Remove one copy of ``e``.

    Copies are interchangeable, so the result only depends on ``(u, v)``;
    ``e.copy`` is checked to name an existing slot.
    """
    if not isinstance(e, Edge):
        e = Edge(*e)
    _check_vertex(g.n, e.u)
    _check_vertex(g.n, e.v)
    if g.multiplicity(e.u, e.v) <= e.copy:
        raise MissingEdgeError(f"edge {e} not present")
    return _with_mult(g, e.u, e.v, -1)


def induced_subgraph(g: MultiGraph, vertices: Sequence[int]) -> MultiGraph:
    """Subgraph on ``vertices``, relabeled ``0..k-1`` in the given order."""
    vs = list(vertices)
    if not vs:
        raise GraphError("induced subgraph of an empty vertex set")
    if len(set(vs)) != len(vs):
        raise GraphError("repeated vertex in induced subgraph")
    for v in vs:
        _check_vertex(g.n, v)
    index = {v: i for i, v in enumerate(vs)}
    return MultiGraph.from_edges(len(vs), [
        (index[a], index[b], k) for a, b, k in g.edge_mults if a in index and b in index
    ])


def is_connected(g: MultiGraph) -> bool:
    if g.n == 0:
        raise GraphError("connectivity of the null graph is undefined")
    nbrs = g.adjacency
    seen = [False] * g.n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        for w in nbrs[stack.pop()]:
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    return count == g.n


def is_tree(g: MultiGraph) -> bool:
    return g.n >= 1 and g.is_simple and g.num_edges == g.n - 1 and is_connected(g)


def non_edges(g: MultiGraph) -> list[tuple[int, int]]:
    if not g.is_simple:
        raise UnsupportedGraphError("non_edges is defined for simple graphs")
    present = {(u, v) for u, v, _ in g.edge_mults}
    return [(i, j) for i in range(g.n) for j in range(i + 1, g.n) if (i, j) not in present]


def relabel(g: MultiGraph, perm: Sequence[int]) -> MultiGraph:
    """Graph with vertex ``v`` renamed ``perm[v]``."""
    if sorted(perm) != list(range(g.n)):
        raise GraphError("relabel needs a permutation of the vertices")
    return MultiGraph.from_edges(g.n, [(perm[u], perm[v], k) for u, v, k in g.edge_mults])
