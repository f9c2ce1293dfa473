"""Subtree polynomials of multigraphs.

General graphs: every subtree spans exactly one connected induced subgraph,
so the coefficient of ``x**k`` is the sum of spanning-tree counts over the
connected induced subgraphs on ``k`` vertices. Spanning trees are counted
with the Matrix-Tree theorem on the multiplicity Laplacian.

Trees: a rooted dynamic programme, which handles thousands of vertices.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .canon import CanonicalForm, canonical_form
from .exact import IntPolynomial, UndefinedMeanError, deriv_at_one, eval_at_one, rational_to_str
from .graph import (
    Edge,
    GraphError,
    GraphSizeError,
    MissingEdgeError,
    MultiGraph,
    delete_edge,
    is_connected,
)

MAX_GENERAL_ORDER = 20


class NotATreeError(GraphError):
    pass


# ---------------------------------------------------------------------------
# Matrix-Tree
# ---------------------------------------------------------------------------

def bareiss_det(rows: list[list[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination.

    ``rows`` is overwritten.
    """
    n = len(rows)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for r in range(k + 1, n):
                if rows[r][k]:
                    rows[k], rows[r] = rows[r], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        rk = rows[k]
        pivot = rk[k]
        for i in range(k + 1, n):
            ri = rows[i]
            f = ri[k]
            for j in range(k + 1, n):
                # exact division is the Bareiss invariant
                ri[j] = (pivot * ri[j] - f * rk[j]) // prev
        prev = pivot
    return sign * rows[n - 1][n - 1]


def _minor_det(mult: Sequence[Sequence[int]], within: Sequence[int], rows_of: Sequence[int]) -> int:
    """det of the Laplacian of ``G[within]`` restricted to rows/cols ``rows_of``."""
    k = len(rows_of)
    if k == 0:
        return 1
    if k == 1:
        r = mult[rows_of[0]]
        return sum(r[w] for w in within)
    if k == 2:
        a, b = rows_of
        ra, rb = mult[a], mult[b]
        da = sum(ra[w] for w in within)
        db = sum(rb[w] for w in within)
        return da * db - ra[b] * ra[b]
    m = []
    for a in rows_of:
        ra = mult[a]
        row = [-ra[b] for b in rows_of]
        row[len(m)] = sum(ra[w] for w in within)
        m.append(row)
    return bareiss_det(m)


def _tau(mult: Sequence[Sequence[int]], vs: Sequence[int]) -> int:
    """Spanning trees of the induced subgraph on ``vs`` (assumed connected)."""
    k = len(vs)
    if k == 1:
        return 1
    if k == 2:
        return mult[vs[0]][vs[1]]
    if k == 3:
        a, b, c = vs
        x, y, z = mult[a][b], mult[b][c], mult[a][c]
        return x * y + y * z + x * z
    rows = [mult[a] for a in vs]
    if sum(r[b] for r in rows for b in vs) == 2 * (k - 1):
        return 1  # connected with k - 1 edges: the subgraph is itself a tree
    return _minor_det(mult, vs, vs[1:])


def spanning_tree_count(g: MultiGraph) -> int:
    """Number of spanning trees; parallel edges count as distinct."""
    if g.n < 1:
        raise GraphError("spanning trees of the null graph are undefined")
    if g.n == 1:
        return 1
    m = [[-g.mult[i][j] for j in range(1, g.n)] for i in range(1, g.n)]
    for i in range(1, g.n):
        m[i - 1][i - 1] = g.degree(i)
    return bareiss_det(m)


# ---------------------------------------------------------------------------
# connected induced subgraphs
# ---------------------------------------------------------------------------

def connected_vertex_sets(adj: Sequence[int], required: int = 0) -> list[int]:
    """Bitmasks of all vertex sets inducing a connected subgraph.

    With ``required`` nonzero only sets containing all of ``required`` are
    returned. Each set is grown from its smallest vertex, extending only by
    neighbours not yet ruled out, so every set is produced exactly once.
    """
    n = len(adj)
    out: list[int] = []
    append = out.append

    def grow(sub: int, ext: int, banned: int) -> None:
        if sub & required == required:
            append(sub)
        while ext:
            low = ext & -ext
            ext ^= low
            w = low.bit_length() - 1
            new_sub = sub | low
            grow(new_sub, (ext | adj[w]) & ~new_sub & ~banned, banned)
            banned |= low

    low_req = (required & -required).bit_length() - 1 if required else n - 1
    for v in range(low_req + 1 if required else n):
        below = (1 << (v + 1)) - 1
        grow(1 << v, adj[v] & ~below, below)
    return out


def _members(mask: int) -> list[int]:
    vs = []
    while mask:
        low = mask & -mask
        vs.append(low.bit_length() - 1)
        mask ^= low
    return vs


def _check_general(g: MultiGraph, max_order: int | None) -> None:
    if g.n < 1:
        raise GraphError("subtree polynomial of the null graph is undefined")
    bound = MAX_GENERAL_ORDER if max_order is None else max_order
    if g.n > bound:
        raise GraphSizeError(
            f"general subtree enumeration is limited to n <= {bound} (got {g.n}); "
            "use tree_subtree_polynomial or the closed forms in families"
        )


def _subset_sum(g: MultiGraph, required: int = 0) -> list[int]:
    mult = g.mult
    coeffs = [0] * (g.n + 1)
    for mask in connected_vertex_sets(g.adjacency_masks(), required):
        vs = _members(mask)
        coeffs[len(vs)] += _tau(mult, vs)
    return coeffs


# ---------------------------------------------------------------------------
# profiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubtreeProfile:
    n: int
    poly: IntPolynomial

    @property
    def total(self) -> int:
        return eval_at_one(self.poly)

    @property
    def weight(self) -> int:
        return deriv_at_one(self.poly)

    @property
    def mean(self) -> Fraction:
        return Fraction(self.weight, self.total)

    @property
    def density(self) -> Fraction:
        return self.mean / self.n

    @property
    def spanning_count(self) -> int:
        return self.poly[self.n]

    @property
    def spanning_proportion(self) -> Fraction:
        return Fraction(self.spanning_count, self.total)

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "poly": [str(c) for c in self.poly.coeffs],
            "total": str(self.total),
            "weight": str(self.weight),
            "mean": rational_to_str(self.mean),
            "density": rational_to_str(self.density),
            "spanning_count": str(self.spanning_count),
            "spanning_proportion": rational_to_str(self.spanning_proportion),
        }


@dataclass(frozen=True)
class LocalProfile:
    anchor: int | Edge
    n: int
    poly: IntPolynomial

    @property
    def mean(self) -> Fraction:
        total = eval_at_one(self.poly)
        if not total:
            raise UndefinedMeanError(f"no subtree contains {self.anchor}")
        return Fraction(deriv_at_one(self.poly), total)

    @property
    def density(self) -> Fraction:
        return self.mean / self.n

    def to_json_obj(self) -> dict:
        a = self.anchor
        anchor = [a.u, a.v, a.copy] if isinstance(a, Edge) else a
        return {
            "anchor": anchor,
            "n": self.n,
            "poly": [str(c) for c in self.poly.coeffs],
            "mean": rational_to_str(self.mean),
            "density": rational_to_str(self.density),
        }


def subtree_polynomial(g: MultiGraph, max_order: int | None = None) -> SubtreeProfile:
    """Global subtree polynomial of a multigraph.

    Disconnected inputs are accepted: their subtrees are those of the
    components, and the spanning count is then zero.
    """
    _check_general(g, max_order)
    return SubtreeProfile(g.n, IntPolynomial(_subset_sum(g)))


def local_polynomial_vertex(g: MultiGraph, v: int, max_order: int | None = None) -> LocalProfile:
    _check_general(g, max_order)
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range")
    return LocalProfile(v, g.n, IntPolynomial(_subset_sum(g, 1 << v)))


def _as_edge(g: MultiGraph, e: Edge | tuple[int, int]) -> Edge:
    if not isinstance(e, Edge):
        e = Edge(*e)
    if not (0 <= e.u < g.n and 0 <= e.v < g.n) or g.multiplicity(e.u, e.v) <= e.copy:
        raise MissingEdgeError(f"edge {e} not present")
    return e


def local_polynomial_edge(g: MultiGraph, e: Edge | tuple[int, int],
                          max_order: int | None = None) -> LocalProfile:
    """Subtrees through one copy of ``e``: S_G minus S_{G-e}."""
    e = _as_edge(g, e)
    full = subtree_polynomial(g, max_order).poly
    rest = subtree_polynomial(delete_edge(g, e), max_order).poly
    return LocalProfile(e, g.n, full - rest)


def local_polynomial_edge_contracted(g: MultiGraph, e: Edge | tuple[int, int],
                                     max_order: int | None = None) -> LocalProfile:
    """Same polynomial as :func:`local_polynomial_edge`, computed directly.

    Spanning trees of ``G[S]`` through a fixed copy of ``uv`` are the
    spanning trees of ``G[S]`` with ``uv`` contracted, whose reduced
    Laplacian (rooted at the merged vertex) is the Laplacian of ``G[S]``
    with the rows of ``u`` and ``v`` removed.
    """
    e = _as_edge(g, e)
    _check_general(g, max_order)
    return LocalProfile(e, g.n, IntPolynomial(_contracted_sum(g.mult, g.adjacency_masks(), e.u, e.v)))


def _contracted_sum(mult, adj: Sequence[int], u: int, v: int) -> list[int]:
    """Coefficients of the local polynomial at a (possibly new) edge ``uv``.

    ``mult`` and ``adj`` describe the graph without the copy of ``uv`` that
    anchors the subtrees, so this also prices adding a non-edge.
    """
    n = len(adj)
    adj2 = list(adj)
    adj2[u] |= 1 << v
    adj2[v] |= 1 << u
    coeffs = [0] * (n + 1)
    for mask in connected_vertex_sets(adj2, (1 << u) | (1 << v)):
        vs = _members(mask)
        rest = [w for w in vs if w != u and w != v]
        coeffs[len(vs)] += _minor_det(mult, vs, rest)
    return coeffs


def added_edge_local_coeffs(g: MultiGraph, u: int, v: int) -> list[int]:
    """Local polynomial coefficients of the new edge in ``g + uv``."""
    return _contracted_sum(g.mult, g.adjacency_masks(), u, v)


# ---------------------------------------------------------------------------
# mu*
# ---------------------------------------------------------------------------

def star_polynomial(g: MultiGraph) -> IntPolynomial:
    """Generating polynomial of subtrees with at least two vertices."""
    if g.num_edges == 0:
        raise UndefinedMeanError("mu* is undefined for an edgeless graph")
    poly = subtree_polynomial(g).poly
    return poly - IntPolynomial.monomial(1, g.n)


def mu_star(g: MultiGraph) -> Fraction:
    p = star_polynomial(g)
    return Fraction(deriv_at_one(p), eval_at_one(p))


# ---------------------------------------------------------------------------
# trees
# ---------------------------------------------------------------------------

def _tree_children(t: MultiGraph, root: int) -> tuple[list[int], list[list[int]]]:
    if not (t.is_simple and t.n >= 1 and t.num_edges == t.n - 1 and is_connected(t)):
        raise NotATreeError("input is not a simple tree")
    nbrs = [t.neighbors(v) for v in range(t.n)]
    order = [root]
    parent = [-1] * t.n
    parent[root] = root
    children: list[list[int]] = [[] for _ in range(t.n)]
    for v in order:
        for w in nbrs[v]:
            if parent[w] == -1:
                parent[w] = v
                children[v].append(w)
                order.append(w)
    return order, children


def _rooted_polys(t: MultiGraph, root: int) -> list[list[int]]:
    """For each v, coefficients of subtrees whose vertex nearest ``root`` is v."""
    order, children = _tree_children(t, root)
    polys: list[list[int]] = [[] for _ in range(t.n)]
    for v in reversed(order):
        acc = [1]
        for c in children[v]:
            pc = polys[c]
            # multiply acc by (1 + pc)
            res = acc + [0] * (len(pc) - 1) if len(pc) > 1 else acc[:]
            for i, a in enumerate(acc):
                if a:
                    for j, b in enumerate(pc):
                        if b:
                            res[i + j] += a * b
            acc = res
        polys[v] = [0] + acc
    return polys


def tree_subtree_polynomial(t: MultiGraph) -> SubtreeProfile:
    polys = _rooted_polys(t, 0)
    total = [0] * (t.n + 1)
    for p in polys:
        for k, c in enumerate(p):
            total[k] += c
    return SubtreeProfile(t.n, IntPolynomial(total))


def tree_local_polynomial_vertex(t: MultiGraph, v: int) -> LocalProfile:
    if not 0 <= v < t.n:
        raise IndexError(f"vertex {v} out of range")
    return LocalProfile(v, t.n, IntPolynomial(_rooted_polys(t, v)[v]))


def tree_moments(t: MultiGraph) -> tuple[int, int]:
    """``(S_T(1), S_T'(1))`` in linear time, without building polynomials.

    For a rooted polynomial ``R_v = x * prod(1 + R_c)`` the value and
    derivative at 1 follow from the product rule.
    """
    order, children = _tree_children(t, 0)
    val = [0] * t.n
    der = [0] * t.n
    for v in reversed(order):
        p, dp = 1, 0
        for c in children[v]:
            q, dq = 1 + val[c], der[c]
            p, dp = p * q, dp * q + p * dq
        val[v], der[v] = p, dp + p
    return sum(val), sum(der)


# ---------------------------------------------------------------------------
# cache
# ---------------------------------------------------------------------------

class ProfileCache:
    """Profiles of simple graphs keyed by canonical form.

    ``dict.setdefault`` gives insert-if-absent; a racing duplicate
    computation simply loses and is discarded.
    """

    def __init__(self, compute: Callable[[MultiGraph], SubtreeProfile] = subtree_polynomial):
        self._data: dict[CanonicalForm, SubtreeProfile] = {}
        self._compute = compute
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def __len__(self) -> int:
        return len(self._data)

    def __contains__(self, key: CanonicalForm) -> bool:
        return key in self._data

    def get(self, g: MultiGraph, key: CanonicalForm | None = None) -> SubtreeProfile:
        if key is None:
            key = canonical_form(g)
        prof = self._data.get(key)
        if prof is not None:
            self.hits += 1
            return prof
        self.misses += 1
        prof = self._compute(g)
        with self._lock:
            return self._data.setdefault(key, prof)

    def put(self, key: CanonicalForm, prof: SubtreeProfile) -> SubtreeProfile:
        with self._lock:
            return self._data.setdefault(key, prof)
