"""Isomorphism-free generation of small connected graphs and trees.

Both generators grow representatives of order ``n - 1`` by one vertex and
deduplicate through canonical forms. Connected graphs are extended by every
nonempty neighbourhood of the new vertex; trees by a single pendant edge.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .canon import MAX_CANON_ORDER, CanonicalForm, canonical_code
from .graph import GraphSizeError, MultiGraph

MAX_GENERATION_ORDER = 8


def _form_masks(form: CanonicalForm) -> list[int]:
    g = form.to_graph()
    return g.adjacency_masks()


@lru_cache(maxsize=None)
def connected_forms(n: int) -> tuple[CanonicalForm, ...]:
    """Sorted canonical forms of all connected simple graphs of order ``n``."""
    if not 1 <= n <= MAX_GENERATION_ORDER:
        raise GraphSizeError(f"connected graph generation supports 1 <= n <= {MAX_GENERATION_ORDER}")
    if n == 1:
        return (CanonicalForm(1, 0),)
    seen: set[int] = set()
    new = n - 1
    for parent in connected_forms(n - 1):
        base = _form_masks(parent) + [0]
        for nbhd in range(1, 1 << new):
            adj = base[:]
            adj[new] = nbhd
            b = nbhd
            while b:
                low = b & -b
                adj[low.bit_length() - 1] |= 1 << new
                b ^= low
            bits, _ = canonical_code(n, adj)
            seen.add(bits)
    return tuple(CanonicalForm(n, b) for b in sorted(seen))


def enumerate_connected_graphs(n: int) -> Iterator[MultiGraph]:
    """One representative per isomorphism class, in canonical-form order."""
    for form in connected_forms(n):
        yield form.to_graph()


@lru_cache(maxsize=None)
def tree_forms(n: int) -> tuple[CanonicalForm, ...]:
    if not 1 <= n <= MAX_CANON_ORDER:
        raise GraphSizeError(f"tree generation supports 1 <= n <= {MAX_CANON_ORDER}")
    if n == 1:
        return (CanonicalForm(1, 0),)
    seen: set[int] = set()
    new = n - 1
    for parent in tree_forms(n - 1):
        base = _form_masks(parent) + [0]
        for v in range(new):
            adj = base[:]
            adj[new] = 1 << v
            adj[v] |= 1 << new
            bits, _ = canonical_code(n, adj)
            seen.add(bits)
    return tuple(CanonicalForm(n, b) for b in sorted(seen))


def enumerate_trees(n: int) -> Iterator[MultiGraph]:
    for form in tree_forms(n):
        yield form.to_graph()
