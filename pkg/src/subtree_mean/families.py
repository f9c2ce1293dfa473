"""Named graph families, closed-form evaluators and trend tables."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterable

from .engine import (
    added_edge_local_coeffs,
    subtree_polynomial,
    tree_moments,
    tree_subtree_polynomial,
)
from .exact import IntPolynomial, deriv_at_one, eval_at_one, rational_to_str, to_decimal
from .graph import Edge, GraphError, GraphSizeError, MultiGraph, add_edge


class FamilySpecError(GraphError):
    pass


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def make_path(n: int) -> MultiGraph:
    if n < 1:
        raise GraphSizeError("path needs n >= 1")
    return MultiGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def make_cycle(n: int) -> MultiGraph:
    if n < 3:
        raise GraphSizeError("cycle needs n >= 3")
    return MultiGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def make_complete(n: int) -> MultiGraph:
    if n < 1:
        raise GraphSizeError("complete graph needs n >= 1")
    return MultiGraph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def make_complete_bipartite(m: int, k: int) -> MultiGraph:
    """Parts ``0..m-1`` and ``m..m+k-1``."""
    if m < 1 or k < 1:
        raise GraphSizeError("complete bipartite graph needs both parts nonempty")
    return MultiGraph.from_edges(m + k, [(i, m + j) for i in range(m) for j in range(k)])


def make_h_n(n: int) -> MultiGraph:
    """K_{2,n-2} with its two hub vertices (0 and 1) joined."""
    if n < 4:
        raise GraphSizeError("H_n needs n >= 4")
    return add_edge(make_complete_bipartite(2, n - 2), 0, 1)


def make_smallest_counterexample() -> tuple[MultiGraph, tuple[int, int]]:
    """The 7-vertex graph whose non-edge ``(0, 1)`` lowers the mean subtree order.

    Vertices 0 and 1 are joined to everything else; 2 is adjacent to them
    only, and 3-4, 5-6 are two extra edges.
    """
    a, b, c, d, e, f, g = range(7)
    edges = [(a, c), (b, c), (a, d), (a, e), (a, f), (a, g),
             (b, d), (b, e), (b, f), (b, g), (d, e), (f, g)]
    return MultiGraph.from_edges(7, edges), (a, b)


@dataclass(frozen=True)
class BroomSpec:
    """Double broom: a path of order ``n - 2s`` with ``s`` leaves on each end."""

    n: int
    s: int

    def __post_init__(self):
        if self.s < 0:
            raise FamilySpecError(f"s must be nonnegative, got {self.s}")
        if 2 * self.s > self.n - 3:
            raise FamilySpecError(f"need 2s <= n - 3, got n={self.n}, s={self.s}")

    @property
    def spine(self) -> int:
        return self.n - 2 * self.s


def make_t_n(spec: BroomSpec) -> MultiGraph:
    """Spine ``0..m-1`` (``u = 0``, ``v = m-1``), then the leaves of u, then of v."""
    m, s = spec.spine, spec.s
    edges = [(i, i + 1) for i in range(m - 1)]
    edges += [(0, m + i) for i in range(s)]
    edges += [(m - 1, m + s + i) for i in range(s)]
    return MultiGraph.from_edges(spec.n, edges)


def make_g_n(spec: BroomSpec) -> tuple[MultiGraph, Edge]:
    t = make_t_n(spec)
    u, v = 0, spec.spine - 1
    return add_edge(t, u, v), Edge(u, v, 0)


def all_broom_specs(max_n: int, min_n: int = 3) -> list[BroomSpec]:
    return [BroomSpec(n, s) for n in range(max(3, min_n), max_n + 1) for s in range((n - 3) // 2 + 1)]


def default_s_sequence(n: int) -> int:
    """Smallest ``s`` with ``2**s >= n**2``, i.e. the ceiling of ``2 log2 n``."""
    if n < 32:
        raise FamilySpecError(f"the default leaf sequence starts at n = 32, got {n}")
    s = (n * n - 1).bit_length()
    assert 1 << s >= n * n and 1 << (s - 1) < n * n
    if 2 * s > n - 3:
        raise FamilySpecError(f"2s <= n - 3 fails at n={n}, s={s}")
    return s


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------

def cycle_edge_polynomial(n: int) -> IntPolynomial:
    """Subtrees of C_n through a fixed edge: x^2 * sum_{i<=n-2} (i+1) x^i."""
    if n < 3:
        raise GraphSizeError("cycle needs n >= 3")
    return IntPolynomial([0, 0] + [i + 1 for i in range(n - 1)])


def cycle_edge_closed_form(n: int) -> tuple[int, int, Fraction]:
    if n < 3:
        raise GraphSizeError("cycle needs n >= 3")
    total = comb(n, 2)
    weight = n * (n - 1) * (2 * n + 2) // 6
    return total, weight, Fraction(2 * n + 2, 3)


def path_polynomial(n: int) -> IntPolynomial:
    """P_n has ``n - k + 1`` subtrees of order ``k``."""
    return IntPolynomial([0] + [n - k + 1 for k in range(1, n + 1)])


def gn_edge_polynomial(spec: BroomSpec) -> IntPolynomial:
    """Local polynomial of G_n at the added edge: each of the 2s leaves is in or out."""
    return IntPolynomial([1, 1]) ** (2 * spec.s) * cycle_edge_polynomial(spec.spine)


def gn_edge_mean_closed_form(spec: BroomSpec) -> Fraction:
    return Fraction(2 * spec.n - spec.s + 2, 3)


def tn_count_closed_form(spec: BroomSpec) -> int:
    n, s = spec.n, spec.s
    return 2 * s + comb(n - 2 * s - 1, 2) + 2 * (n - 2 * s - 1) * 2**s + 2 ** (2 * s)


@dataclass(frozen=True)
class BroomProfile:
    """Exact totals for T_n and G_n assembled without general enumeration."""

    spec: BroomSpec
    t_total: int
    t_weight: int
    e_total: int
    e_weight: int

    @property
    def mean_t(self) -> Fraction:
        return Fraction(self.t_weight, self.t_total)

    @property
    def mean_g_edge(self) -> Fraction:
        return Fraction(self.e_weight, self.e_total)

    @property
    def mean_g(self) -> Fraction:
        return Fraction(self.t_weight + self.e_weight, self.t_total + self.e_total)

    @property
    def den_t(self) -> Fraction:
        return self.mean_t / self.spec.n

    @property
    def den_g(self) -> Fraction:
        return self.mean_g / self.spec.n

    @property
    def den_g_edge(self) -> Fraction:
        return self.mean_g_edge / self.spec.n


def broom_profile(spec: BroomSpec) -> BroomProfile:
    t_total, t_weight = tree_moments(make_t_n(spec))
    local = gn_edge_polynomial(spec)
    return BroomProfile(spec, t_total, t_weight, eval_at_one(local), deriv_at_one(local))


# ---------------------------------------------------------------------------
# trend tables
# ---------------------------------------------------------------------------

@dataclass
class TrendRow:
    n: int
    values: dict[str, Fraction] = field(default_factory=dict)

    def decimals(self, digits: int = 6) -> dict[str, str]:
        return {k: to_decimal(v, digits) for k, v in self.values.items()}


def density_gap_table(n_list: Iterable[int],
                      s_of: Callable[[int], int] = default_s_sequence) -> list[TrendRow]:
    rows = []
    for n in n_list:
        if n < 32:
            raise FamilySpecError(f"broom-gap rows need n >= 32, got {n}")
        s = s_of(n)
        prof = broom_profile(BroomSpec(n, s))
        rows.append(TrendRow(n, {
            "s": Fraction(s),
            "den_t": prof.den_t,
            "den_g": prof.den_g,
            "den_g_edge": prof.den_g_edge,
            "gap": prof.den_t - prof.den_g,
            "den_t_lower_bound": Fraction(n - s - 1, n),
        }))
    return rows


def path_cycle_gap_table(n_list: Iterable[int]) -> list[TrendRow]:
    rows = []
    for n in n_list:
        if n < 3:
            raise GraphSizeError(f"path-cycle-gap rows need n >= 3, got {n}")
        path = tree_subtree_polynomial(make_path(n)).poly
        cycle = cycle_edge_polynomial(n) + path
        den_p = Fraction(deriv_at_one(path), eval_at_one(path) * n)
        den_c = Fraction(deriv_at_one(cycle), eval_at_one(cycle) * n)
        rows.append(TrendRow(n, {"den_c": den_c, "den_p": den_p, "gap": den_c - den_p}))
    return rows


def hn_gap_table(n_list: Iterable[int]) -> list[TrendRow]:
    """mu(K_{2,n-2}) - mu(H_n) by exact enumeration (desk scale: n <= 16)."""
    rows = []
    for n in n_list:
        if not 4 <= n <= 16:
            raise GraphSizeError(f"hn-gap rows are enumerated for 4 <= n <= 16, got {n}")
        k = make_complete_bipartite(2, n - 2)
        base = subtree_polynomial(k).poly
        local = IntPolynomial(added_edge_local_coeffs(k, 0, 1))
        mu_k = Fraction(deriv_at_one(base), eval_at_one(base))
        mu_h = Fraction(deriv_at_one(base) + deriv_at_one(local),
                        eval_at_one(base) + eval_at_one(local))
        rows.append(TrendRow(n, {"mu_k2": mu_k, "mu_h": mu_h, "gap": mu_k - mu_h}))
    return rows


TREND_TABLES = {
    "broom-gap": density_gap_table,
    "path-cycle-gap": path_cycle_gap_table,
    "hn-gap": hn_gap_table,
}


def rows_to_csv(rows: list[TrendRow], digits: int = 6) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    names = list(rows[0].values) if rows else []
    w.writerow(["n"] + [c for name in names for c in (name, f"{name}_decimal")])
    for r in rows:
        dec = r.decimals(digits)
        w.writerow([r.n] + [c for name in names for c in (rational_to_str(r.values[name]), dec[name])])
    return buf.getvalue()


def rows_to_json(rows: list[TrendRow], digits: int = 6) -> str:
    out = []
    for r in rows:
        dec = r.decimals(digits)
        out.append({"n": r.n,
                    "values": {k: rational_to_str(v) for k, v in r.values.items()},
                    "decimal": dec})
    return json.dumps(out, indent=2)


# ---------------------------------------------------------------------------
# name:params grammar
# ---------------------------------------------------------------------------

FAMILY_HELP = (
    "path:N, cycle:N, complete:N, kbip:M:N, hn:N, broom:N:S (tree T_n), "
    "broomg:N:S (T_n plus spine-end edge), cex7 (7-vertex counterexample)"
)


def parse_family(spec: str) -> MultiGraph:
    name, *params = spec.strip().split(":")
    try:
        args = [int(p) for p in params]
    except ValueError as exc:
        raise FamilySpecError(f"bad family parameters in {spec!r}") from exc
    builders: dict[str, tuple[int, Callable[..., MultiGraph]]] = {
        "path": (1, make_path),
        "cycle": (1, make_cycle),
        "complete": (1, make_complete),
        "kbip": (2, make_complete_bipartite),
        "hn": (1, make_h_n),
        "broom": (2, lambda n, s: make_t_n(BroomSpec(n, s))),
        "broomg": (2, lambda n, s: make_g_n(BroomSpec(n, s))[0]),
        "cex7": (0, lambda: make_smallest_counterexample()[0]),
    }
    if name not in builders:
        raise FamilySpecError(f"unknown family {name!r}; expected one of: {FAMILY_HELP}")
    arity, build = builders[name]
    if len(args) != arity:
        raise FamilySpecError(f"family {name!r} takes {arity} parameter(s), got {len(args)}")
    return build(*args)
