"""Exhaustive edge-addition searches and empirical checks over small graphs."""

from __future__ import annotations

import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Sequence

from . import __version__
from .canon import CanonicalForm, canonical_code, canonical_form
from .engine import (
    ProfileCache,
    SubtreeProfile,
    subtree_polynomial,
    tree_local_polynomial_vertex,
)
from .exact import IntPolynomial, rational_from_str, rational_to_str, to_decimal
from .generate import MAX_GENERATION_ORDER, connected_forms, tree_forms
from .graph import (
    Edge,
    GraphError,
    GraphSizeError,
    MultiGraph,
    add_edge,
    delete_edge,
    induced_subgraph,
    is_connected,
    non_edges,
)
from .graph6 import to_graph6

log = logging.getLogger(__name__)

REPORT_SCHEMA_VERSION = 1
SEARCH_MODES = ("conjecture1", "conjecture2", "lemma4", "proposition", "tree-theorem")


class PreconditionError(GraphError):
    pass


class LemmaViolationError(AssertionError):
    """No edge satisfies the strict edge-deletion inequalities."""


class TheoremViolationError(AssertionError):
    """The tree construction failed to raise the mean subtree order."""


# ---------------------------------------------------------------------------
# single-graph edge-addition scan
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairResult:
    u: int
    v: int
    new_mean: Fraction
    delta: Fraction


@dataclass(frozen=True)
class EdgeScanResult:
    form: CanonicalForm | None
    graph6: str
    base_mean: Fraction
    per_pair: tuple[PairResult, ...]

    @property
    def worst_delta(self) -> Fraction | None:
        return min((p.delta for p in self.per_pair), default=None)

    @property
    def any_increase(self) -> bool:
        return any(p.delta > 0 for p in self.per_pair)

    @property
    def any_decrease(self) -> bool:
        return any(p.delta < 0 for p in self.per_pair)

    def to_json_obj(self) -> dict:
        worst = self.worst_delta
        return {
            "graph6": self.graph6,
            "base_mean": rational_to_str(self.base_mean),
            "per_pair": [[p.u, p.v, rational_to_str(p.new_mean), rational_to_str(p.delta)]
                         for p in self.per_pair],
            "worst_delta": None if worst is None else rational_to_str(worst),
            "any_increase": self.any_increase,
            "any_decrease": self.any_decrease,
        }


def scan_edge_additions(g: MultiGraph, cache: ProfileCache | None = None) -> EdgeScanResult:
    """Exact change in mean subtree order for every non-edge, in lexicographic order."""
    if not g.is_simple:
        raise PreconditionError("edge-addition scans take simple graphs")
    if g.n < 1 or not is_connected(g):
        raise PreconditionError("edge-addition scans take connected graphs")
    if cache is None:
        profile = subtree_polynomial
    else:
        profile = cache.get
    base = profile(g).mean
    pairs = []
    for u, v in non_edges(g):
        new = profile(add_edge(g, u, v)).mean
        pairs.append(PairResult(u, v, new, new - base))
    form = canonical_form(g) if g.n <= 10 else None
    return EdgeScanResult(form, to_graph6(g), base, tuple(pairs))


# The exhaustive scan works on raw masks and a bits -> (total, weight) table;
# building MultiGraph objects per pair would dominate the run time.

def _profile_chunk(args: tuple[int, Sequence[int]]) -> list[tuple[int, SubtreeProfile]]:
    n, bits_list = args
    return [(b, subtree_polynomial(CanonicalForm(n, b).to_graph())) for b in bits_list]


_WORKER_TABLE: dict[int, tuple[int, int]] = {}


def _init_worker(table: dict[int, tuple[int, int]]) -> None:
    global _WORKER_TABLE
    _WORKER_TABLE = table


def _scan_chunk(args: tuple[int, Sequence[int]]) -> list[EdgeScanResult]:
    n, bits_list = args
    return [_scan_form(CanonicalForm(n, b), _WORKER_TABLE) for b in bits_list]


def _scan_form(form: CanonicalForm, table: dict[int, tuple[int, int]]) -> EdgeScanResult:
    g = form.to_graph()
    n = g.n
    adj = g.adjacency_masks()
    total, weight = table[form.bits]
    base = Fraction(weight, total)
    pairs = []
    for u, v in non_edges(g):
        a2 = list(adj)
        a2[u] |= 1 << v
        a2[v] |= 1 << u
        t2, w2 = table[canonical_code(n, a2)[0]]
        new = Fraction(w2, t2)
        pairs.append(PairResult(u, v, new, new - base))
    return EdgeScanResult(form, to_graph6(g), base, tuple(pairs))


def _chunks(items: Sequence[int], parts: int) -> list[list[int]]:
    size = max(1, -(-len(items) // parts))
    return [list(items[i:i + size]) for i in range(0, len(items), size)]


def build_order_cache(n: int, workers: int = 1) -> ProfileCache:
    """Profiles of every connected graph of order ``n``, keyed by canonical form."""
    forms = connected_forms(n)
    cache = ProfileCache()
    bits = [f.bits for f in forms]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            for chunk in ex.map(_profile_chunk, [(n, c) for c in _chunks(bits, workers * 4)]):
                for b, prof in chunk:
                    cache.put(CanonicalForm(n, b), prof)
    else:
        for b, prof in _profile_chunk((n, bits)):
            cache.put(CanonicalForm(n, b), prof)
    return cache


@lru_cache(maxsize=None)  # orders are bounded by MAX_GENERATION_ORDER
def scan_order(n: int, workers: int = 1) -> tuple[EdgeScanResult, ...]:
    """Edge-addition scans of every connected graph of order ``n``.

    Every ``g + uv`` is again a connected graph of order ``n``, so one
    profile per isomorphism class covers the whole scan. Results come back
    in canonical-form order regardless of ``workers``.
    """
    if not 1 <= n <= MAX_GENERATION_ORDER:
        raise GraphSizeError(f"exhaustive scans support 1 <= n <= {MAX_GENERATION_ORDER}")
    t0 = time.perf_counter()
    forms = connected_forms(n)
    cache = build_order_cache(n, workers)
    table = {f.bits: (p.total, p.weight) for f, p in cache._data.items()}
    log.info("order %d: %d profiles in %.1fs", n, len(table), time.perf_counter() - t0)
    bits = [f.bits for f in forms]
    if workers > 1:
        results: list[EdgeScanResult] = []
        with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(table,)) as ex:
            for chunk in ex.map(_scan_chunk, [(n, c) for c in _chunks(bits, workers * 4)]):
                results.extend(chunk)
    else:
        results = [_scan_form(f, table) for f in forms]
    log.info("order %d: scanned %d graphs in %.1fs", n, len(results), time.perf_counter() - t0)
    return tuple(results)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class SearchReport:
    mode: str
    order: int
    graphs_scanned: int
    counterexample_count: int
    max_decrease: Fraction
    conjecture2_holds: bool | None  # None when the mode does not scan edge additions
    witnesses: list[str] = field(default_factory=list)
    elapsed: float = 0.0
    tool_version: str = __version__
    details: dict = field(default_factory=dict)

    def summary(self, digits: int = 6) -> str:
        if self.mode == "conjecture1":
            return (f"order {self.order}: {self.counterexample_count} counterexample"
                    f"{'' if self.counterexample_count == 1 else 's'} among {self.graphs_scanned} graphs, "
                    f"max decrease {to_decimal(self.max_decrease, digits)}")
        if self.mode == "conjecture2":
            return (f"order {self.order}: {self.counterexample_count} violations among "
                    f"{self.graphs_scanned} non-complete graphs")
        return (f"order {self.order} [{self.mode}]: {self.counterexample_count} failures among "
                f"{self.graphs_scanned} graphs")

    def to_json_obj(self, include_timing: bool = True) -> dict:
        obj = {
            "schema_version": REPORT_SCHEMA_VERSION,
            "mode": self.mode,
            "order": self.order,
            "graphs_scanned": self.graphs_scanned,
            "counterexample_count": self.counterexample_count,
            "max_decrease": rational_to_str(self.max_decrease),
            "conjecture2_holds": self.conjecture2_holds,
            "witnesses": sorted(self.witnesses),
            "version": self.tool_version,
            "details": self.details,
        }
        if include_timing:
            obj["elapsed_ms"] = round(self.elapsed * 1000)
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict) -> SearchReport:
        if obj.get("schema_version") != REPORT_SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema version {obj.get('schema_version')!r}")
        return cls(
            mode=obj["mode"],
            order=obj["order"],
            graphs_scanned=obj["graphs_scanned"],
            counterexample_count=obj["counterexample_count"],
            max_decrease=rational_from_str(obj["max_decrease"]),
            conjecture2_holds=obj["conjecture2_holds"],
            witnesses=list(obj["witnesses"]),
            elapsed=obj.get("elapsed_ms", 0) / 1000,
            tool_version=obj["version"],
            details=obj.get("details", {}),
        )


def witness_path(path: Path) -> Path:
    return path.with_suffix(".g6")


def persist_report(report: SearchReport, path: str | Path, include_timing: bool = True) -> Path:
    """Write ``path`` (JSON) and the sorted witness list next to it (``.g6``)."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(report.to_json_obj(include_timing), indent=2, sort_keys=True) + "\n")
        witness_path(path).write_text("".join(w + "\n" for w in sorted(report.witnesses)))
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc}") from exc
    return path


def load_report(path: str | Path) -> SearchReport:
    path = Path(path)
    try:
        obj = json.loads(path.read_text())
    except OSError as exc:
        raise OSError(f"cannot read report {path}: {exc}") from exc
    return SearchReport.from_json_obj(obj)


# ---------------------------------------------------------------------------
# exhaustive searches
# ---------------------------------------------------------------------------

def _check_search_order(n: int, lo: int, hi: int) -> None:
    if not lo <= n <= hi:
        raise GraphSizeError(f"order must lie in {lo}..{hi}, got {n}")


def find_conjecture1_counterexamples(n: int, workers: int = 1) -> SearchReport:
    """Graphs of order ``n`` where some added edge lowers the mean subtree order."""
    _check_search_order(n, 3, MAX_GENERATION_ORDER)
    t0 = time.perf_counter()
    scans = scan_order(n, workers)
    bad = [s for s in scans if s.any_decrease]
    max_dec = max((-s.worst_delta for s in bad), default=Fraction(0))
    extremal = [s.graph6 for s in bad if -s.worst_delta == max_dec]
    c2 = all(s.any_increase for s in scans if s.per_pair)
    return SearchReport(
        mode="conjecture1",
        order=n,
        graphs_scanned=len(scans),
        counterexample_count=len(bad),
        max_decrease=max_dec,
        conjecture2_holds=c2,
        witnesses=sorted(s.graph6 for s in bad),
        elapsed=time.perf_counter() - t0,
        details={
            "decreasing_pairs": sum(1 for s in bad for p in s.per_pair if p.delta < 0),
            "pairs_scanned": sum(len(s.per_pair) for s in scans),
            "max_decrease_decimal": to_decimal(max_dec, 6),
            "max_decrease_witnesses": sorted(extremal),
        },
    )


def verify_conjecture2(n: int, workers: int = 1) -> SearchReport:
    """Every connected non-complete graph of order ``n`` has an increasing non-edge."""
    _check_search_order(n, 2, MAX_GENERATION_ORDER)
    t0 = time.perf_counter()
    scans = [s for s in scan_order(n, workers) if s.per_pair]
    violators = [s.graph6 for s in scans if not s.any_increase]
    return SearchReport(
        mode="conjecture2",
        order=n,
        graphs_scanned=len(scans),
        counterexample_count=len(violators),
        max_decrease=max((-s.worst_delta for s in scans if s.any_decrease), default=Fraction(0)),
        conjecture2_holds=not violators,
        witnesses=sorted(violators),
        elapsed=time.perf_counter() - t0,
    )


# ---------------------------------------------------------------------------
# edge deletion and parallel edges
# ---------------------------------------------------------------------------

def verify_edge_deletion_lemma(g: MultiGraph) -> Edge:
    """First edge copy ``e`` with mu(G, e) > mu(G) > mu(G - e)."""
    if g.num_edges == 0:
        raise PreconditionError("the edge-deletion check needs at least one edge")
    full = subtree_polynomial(g).poly
    mu = _mean(full)
    for e in g.edges():
        rest = subtree_polynomial(delete_edge(g, e)).poly
        local = full - rest
        if _mean(local) > mu > _mean(rest):
            return e
    raise LemmaViolationError(f"no edge of {g!r} satisfies mu(G,e) > mu(G) > mu(G-e)")


def _mean(p: IntPolynomial) -> Fraction:
    return Fraction(sum(k * c for k, c in enumerate(p)), sum(p))


def verify_parallel_edge_proposition(g: MultiGraph) -> tuple[Edge, Fraction]:
    """Add an edge (parallel to an existing one if needed) that raises the mean.

    Returns the new edge copy and the mean of the enlarged multigraph.
    """
    if g.n < 2:
        raise GraphSizeError("need at least two vertices")
    base = subtree_polynomial(g).poly
    mu_g = _mean(base)
    if g.num_edges == 0:
        h = add_edge(g, 0, 1)
        mu_h = subtree_polynomial(h).mean
        if not mu_h > mu_g:
            raise TheoremViolationError("joining two vertices of an edgeless graph did not raise the mean")
        return Edge(0, 1, 0), mu_h
    e = verify_edge_deletion_lemma(g)
    h = add_edge(g, e.u, e.v)
    f = Edge(e.u, e.v, h.multiplicity(e.u, e.v) - 1)
    h_poly = subtree_polynomial(h).poly
    local_f = h_poly - base  # H - f is G
    local_e = base - subtree_polynomial(delete_edge(g, e)).poly
    if local_f != local_e:
        raise TheoremViolationError(f"S_(H,f) != S_(G,e) for {g!r}")
    mu_h = _mean(h_poly)
    weighted = (sum(local_e) * _mean(local_e) + sum(base) * mu_g) / sum(h_poly)
    if mu_h != weighted or not mu_h > mu_g:
        raise TheoremViolationError(f"doubling {e} did not raise the mean of {g!r}")
    return f, mu_h


# ---------------------------------------------------------------------------
# trees
# ---------------------------------------------------------------------------

def _pendant_path(nbrs: Sequence[Sequence[int]], u: int, x: int) -> list[int] | None:
    """Vertices of the component of T - u at ``x`` if it hangs off ``u`` as a path."""
    path = [x]
    prev, cur = u, x
    while True:
        deg = len(nbrs[cur])
        if deg == 1:
            return path
        if deg > 2:
            return None
        nxt = nbrs[cur][0] if nbrs[cur][0] != prev else nbrs[cur][1]
        prev, cur = cur, nxt
        path.append(cur)


@dataclass(frozen=True)
class TreeConstruction:
    tree: MultiGraph
    u: int
    v: int
    w: int
    p_vertices: tuple[int, ...]
    q_vertices: tuple[int, ...]
    augmented: MultiGraph

    @property
    def p(self) -> int:
        return len(self.p_vertices)

    @property
    def q(self) -> int:
        return len(self.q_vertices)

    @property
    def rest_vertices(self) -> list[int]:
        drop = set(self.p_vertices) | set(self.q_vertices)
        return [x for x in range(self.tree.n) if x not in drop]


def find_tree_construction(t: MultiGraph) -> TreeConstruction:
    if t.n < 3:
        raise GraphSizeError("the tree construction needs n >= 3")
    if not (t.is_simple and t.num_edges == t.n - 1 and is_connected(t)):
        raise PreconditionError("input is not a tree")
    nbrs = t.adjacency
    for u in range(t.n):
        paths = [p for p in (_pendant_path(nbrs, u, x) for x in nbrs[u]) if p is not None]
        if len(paths) >= 2:
            paths.sort(key=lambda p: p[-1])  # by the leaf at the far end
            p_path, q_path = paths[0], paths[1]
            v, w = p_path[0], q_path[0]
            return TreeConstruction(t, u, v, w, tuple(p_path), tuple(q_path), add_edge(t, v, w))
    raise TheoremViolationError(f"no vertex with two pendant paths in {t!r}")


def tree_construction_edge(t: MultiGraph) -> tuple[int, int, int, MultiGraph]:
    c = find_tree_construction(t)
    return c.u, c.v, c.w, c.augmented


@dataclass(frozen=True)
class TreeCheck:
    construction: TreeConstruction
    mean_t: Fraction
    mean_h: Fraction
    mean_h_edge: Fraction
    mean_t_vertex: Fraction
    edge_factorization: bool
    vertex_factorization: bool

    @property
    def ok(self) -> bool:
        return (self.mean_h > self.mean_t and self.mean_h_edge > self.mean_t_vertex
                and self.edge_factorization and self.vertex_factorization)


def check_tree_theorem(t: MultiGraph) -> TreeCheck:
    """Run the construction and confirm both factorizations coefficientwise."""
    c = find_tree_construction(t)
    s_t = subtree_polynomial(t).poly
    s_h = subtree_polynomial(c.augmented).poly
    local_e = s_h - s_t
    local_u = tree_local_polynomial_vertex(t, c.u).poly
    rest = c.rest_vertices
    r = induced_subgraph(t, rest)
    s_ru = tree_local_polynomial_vertex(r, rest.index(c.u)).poly
    f = IntPolynomial.geometric
    x2 = IntPolynomial.monomial(2)
    edge_rhs = x2 * f(c.p - 1) * f(c.q - 1) * (IntPolynomial([1]) + IntPolynomial([2 * a for a in s_ru]))
    vertex_rhs = f(c.p) * f(c.q) * s_ru
    return TreeCheck(
        construction=c,
        mean_t=_mean(s_t),
        mean_h=_mean(s_h),
        mean_h_edge=_mean(local_e),
        mean_t_vertex=_mean(local_u),
        edge_factorization=local_e == edge_rhs,
        vertex_factorization=local_u == vertex_rhs,
    )


# ---------------------------------------------------------------------------
# exhaustive verifications
# ---------------------------------------------------------------------------

def _graph_label(g: MultiGraph) -> str:
    return to_graph6(g) if g.is_simple else g.to_json()


def verify_lemma4_order(n: int) -> SearchReport:
    _check_search_order(n, 2, MAX_GENERATION_ORDER)
    t0 = time.perf_counter()
    failures = []
    graphs = [f.to_graph() for f in connected_forms(n)]
    for g in graphs:
        try:
            verify_edge_deletion_lemma(g)
        except LemmaViolationError:
            failures.append(_graph_label(g))
    return _check_report("lemma4", n, len(graphs), failures, t0)


def verify_proposition_order(n: int) -> SearchReport:
    _check_search_order(n, 2, MAX_GENERATION_ORDER)
    t0 = time.perf_counter()
    failures = []
    graphs = [f.to_graph() for f in connected_forms(n)]
    for g in graphs:
        try:
            verify_parallel_edge_proposition(g)
        except (LemmaViolationError, TheoremViolationError):
            failures.append(_graph_label(g))
    return _check_report("proposition", n, len(graphs), failures, t0)


def verify_tree_theorem_order(n: int) -> SearchReport:
    _check_search_order(n, 3, 10)
    t0 = time.perf_counter()
    failures = []
    trees = [f.to_graph() for f in tree_forms(n)]
    for t in trees:
        if not check_tree_theorem(t).ok:
            failures.append(to_graph6(t))
    return _check_report("tree-theorem", n, len(trees), failures, t0)


def _check_report(mode: str, n: int, scanned: int, failures: list[str], t0: float) -> SearchReport:
    return SearchReport(
        mode=mode,
        order=n,
        graphs_scanned=scanned,
        counterexample_count=len(failures),
        max_decrease=Fraction(0),
        conjecture2_holds=None,
        witnesses=sorted(failures),
        elapsed=time.perf_counter() - t0,
    )


def run_search(n: int, mode: str, workers: int = 1) -> SearchReport:
    if mode == "conjecture1":
        return find_conjecture1_counterexamples(n, workers)
    if mode == "conjecture2":
        return verify_conjecture2(n, workers)
    if mode == "lemma4":
        return verify_lemma4_order(n)
    if mode == "proposition":
        return verify_proposition_order(n)
    if mode == "tree-theorem":
        return verify_tree_theorem_order(n)
    raise ValueError(f"unknown search mode {mode!r}; expected one of {', '.join(SEARCH_MODES)}")
