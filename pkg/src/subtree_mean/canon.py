"""Canonical forms for small simple graphs.

The search walks an individualisation/refinement tree: the vertex partition
is refined by neighbour counts (starting from the degree partition), a
vertex of the first smallest non-singleton cell is split off, and every
discrete leaf gives a labeling. The smallest adjacency code over all leaves
is the canonical form. Branches that start from a twin of an already
explored vertex are skipped; swapping two twins is an automorphism, so they
would only reproduce the same leaves.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import GraphSizeError, MultiGraph, UnsupportedGraphError

MAX_CANON_ORDER = 10


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Order plus the graph6-ordered upper triangle packed into an int.

    Bit ``(i, j)`` with ``i < j`` sits at position ``j*(j-1)/2 + i`` counted
    from the most significant end, so integer order is lexicographic order
    of the graph6 bit string.
    """

    n: int
    bits: int

    def to_graph(self) -> MultiGraph:
        n = self.n
        total = n * (n - 1) // 2
        edges = []
        k = 0
        for j in range(1, n):
            for i in range(j):
                if (self.bits >> (total - 1 - k)) & 1:
                    edges.append((i, j))
                k += 1
        return MultiGraph.from_edges(n, edges)

    def to_graph6(self) -> str:
        from .graph6 import to_graph6

        return to_graph6(self.to_graph())


def _refine(adj: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = []
        for cell in cells:
            m = 0
            for v in cell:
                m |= 1 << v
            masks.append(m)
        out: list[list[int]] = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                a = adj[v]
                sig = tuple((a & m).bit_count() for m in masks)
                groups.setdefault(sig, []).append(v)
            if len(groups) == 1:
                out.append(cell)
            else:
                split = True
                for sig in sorted(groups):
                    out.append(groups[sig])
        cells = out
        if not split:
            return cells


def canonical_code(n: int, adj: Sequence[int]) -> tuple[int, list[int]]:
    """Return ``(bits, order)`` where ``order[k]`` is the vertex labeled ``k``."""
    if n <= 1:
        return 0, list(range(n))
    total = n * (n - 1) // 2
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if (adj[u] >> v) & 1]
    best_bits: int | None = None
    best_order: list[int] = []

    def leaf(cells: list[list[int]]) -> None:
        nonlocal best_bits, best_order
        pos = [0] * n
        for k, cell in enumerate(cells):
            pos[cell[0]] = k
        bits = 0
        for u, v in edges:
            i, j = pos[u], pos[v]
            if i > j:
                i, j = j, i
            bits |= 1 << (total - 1 - (j * (j - 1) // 2 + i))
        if best_bits is None or bits < best_bits:
            best_bits = bits
            best_order = [c[0] for c in cells]

    def search(cells: list[list[int]]) -> None:
        cells = _refine(adj, cells)
        if len(cells) == n:
            leaf(cells)
            return
        target = min(
            (k for k, c in enumerate(cells) if len(c) > 1),
            key=lambda k: len(cells[k]),
        )
        cell = cells[target]
        tried: list[int] = []
        for w in cell:
            wbit = 1 << w
            if any(
                (adj[t] & ~(wbit | (1 << t))) == (adj[w] & ~(wbit | (1 << t)))
                for t in tried
            ):
                continue
            tried.append(w)
            rest = [x for x in cell if x != w]
            search(cells[:target] + [[w], rest] + cells[target + 1:])

    search([list(range(n))])
    assert best_bits is not None
    return best_bits, best_order


def canonical_form(g: MultiGraph) -> CanonicalForm:
    if not g.is_simple:
        raise UnsupportedGraphError("canonical forms are defined for simple graphs")
    if g.n > MAX_CANON_ORDER:
        raise GraphSizeError(f"canonical_form supports n <= {MAX_CANON_ORDER}, got {g.n}")
    bits, _ = canonical_code(g.n, g.adjacency_masks())
    return CanonicalForm(g.n, bits)


def canonical_relabeling(g: MultiGraph) -> list[int]:
    """Permutation ``perm`` with ``relabel(g, perm)`` equal to the canonical graph."""
    if not g.is_simple:
        raise UnsupportedGraphError("canonical forms are defined for simple graphs")
    if g.n > MAX_CANON_ORDER:
        raise GraphSizeError(f"canonical_form supports n <= {MAX_CANON_ORDER}, got {g.n}")
    _, order = canonical_code(g.n, g.adjacency_masks())
    perm = [0] * g.n
    for k, v in enumerate(order):
        perm[v] = k
    return perm


def is_isomorphic(g: MultiGraph, h: MultiGraph) -> bool:
    return g.n == h.n and canonical_form(g) == canonical_form(h)
