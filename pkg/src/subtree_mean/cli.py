"""Command-line entry point: ``subtree-mean <verb> [options]``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .engine import (
    local_polynomial_edge,
    local_polynomial_vertex,
    subtree_polynomial,
    tree_local_polynomial_vertex,
    tree_subtree_polynomial,
)
from .exact import rational_to_str, to_decimal
from .families import FAMILY_HELP, TREND_TABLES, parse_family, rows_to_csv, rows_to_json
from .graph import Edge, MultiGraph, is_tree
from .graph6 import parse_graph6, to_graph6
from .search import (
    SEARCH_MODES,
    check_tree_theorem,
    persist_report,
    run_search,
    scan_edge_additions,
    verify_edge_deletion_lemma,
    verify_parallel_edge_proposition,
)

log = logging.getLogger("subtree_mean")


def _add_input(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--g6", help="graph6 string")
    src.add_argument("--json", help="multigraph JSON: inline object or a file path")
    src.add_argument("--family", help=f"family spec: {FAMILY_HELP}")


def _add_output(p: argparse.ArgumentParser, formats=("text", "json")) -> None:
    p.add_argument("--format", choices=formats, default=formats[0])
    p.add_argument("--digits", type=int, default=6, help="decimal places in renderings (default 6)")


def _read_graph(args: argparse.Namespace) -> MultiGraph:
    if args.g6 is not None:
        return parse_graph6(args.g6)
    if args.json is not None:
        text = args.json if args.json.lstrip().startswith("{") else Path(args.json).read_text()
        return MultiGraph.from_json(text)
    return parse_family(args.family)


def _q(x: Fraction, digits: int) -> str:
    return f"{rational_to_str(x)} ({to_decimal(x, digits)})"


def _emit(obj: dict, lines: list[str], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, indent=2))
    else:
        print("\n".join(lines))


def cmd_compute(args: argparse.Namespace) -> int:
    g = _read_graph(args)
    prof = tree_subtree_polynomial(g) if is_tree(g) else subtree_polynomial(g)
    d = args.digits
    lines = [
        f"n: {g.n}",
        f"polynomial: {prof.poly}",
        f"S(1): {prof.total}",
        f"S'(1): {prof.weight}",
        f"mean: {_q(prof.mean, d)}",
        f"density: {_q(prof.density, d)}",
        f"spanning_count: {prof.spanning_count}",
        f"spanning_proportion: {_q(prof.spanning_proportion, d)}",
    ]
    _emit(prof.to_json_obj(), lines, args.format)
    return 0


def cmd_local(args: argparse.Namespace) -> int:
    g = _read_graph(args)
    if (args.vertex is None) == (args.edge is None):
        raise ValueError("give exactly one of --vertex or --edge")
    if args.vertex is not None:
        prof = tree_local_polynomial_vertex(g, args.vertex) if is_tree(g) else local_polynomial_vertex(g, args.vertex)
    else:
        parts = [int(x) for x in args.edge.split(",")]
        prof = local_polynomial_edge(g, Edge(*parts))
    lines = [
        f"anchor: {args.vertex if args.vertex is not None else args.edge}",
        f"polynomial: {prof.poly}",
        f"mean: {_q(prof.mean, args.digits)}",
        f"density: {_q(prof.density, args.digits)}",
    ]
    _emit(prof.to_json_obj(), lines, args.format)
    return 0


def cmd_scan(args: argparse.Namespace) -> int:
    g = _read_graph(args)
    res = scan_edge_additions(g)
    d = args.digits
    lines = [f"graph: {res.graph6}", f"base mean: {_q(res.base_mean, d)}"]
    for p in res.per_pair:
        lines.append(f"{p.u} {p.v} new_mean={_q(p.new_mean, d)} delta={_q(p.delta, d)}")
    lines.append(f"any_increase: {res.any_increase}  any_decrease: {res.any_decrease}")
    _emit(res.to_json_obj(), lines, args.format)
    return 0


def cmd_search(args: argparse.Namespace) -> int:
    report = run_search(args.order, args.mode, args.workers)
    if args.out:
        path = persist_report(report, Path(args.out) / f"{args.mode}-order{args.order}.json")
        log.info("wrote %s", path)
    if args.format == "json":
        print(json.dumps(report.to_json_obj(), indent=2, sort_keys=True))
    else:
        print(report.summary(args.digits))
    # verification modes fail loudly; counterexamples to the first conjecture are the expected output
    return 1 if args.mode != "conjecture1" and report.counterexample_count else 0


def cmd_verify(args: argparse.Namespace) -> int:
    g = _read_graph(args)
    d = args.digits
    if args.check == "lemma4":
        e = verify_edge_deletion_lemma(g)
        obj = {"edge": [e.u, e.v, e.copy]}
        lines = [f"witness edge: {e.u}-{e.v} (copy {e.copy})"]
    elif args.check == "proposition":
        f, mu = verify_parallel_edge_proposition(g)
        obj = {"edge": [f.u, f.v, f.copy], "new_mean": rational_to_str(mu)}
        lines = [f"added edge: {f.u}-{f.v} (copy {f.copy})", f"new mean: {_q(mu, d)}"]
    else:
        chk = check_tree_theorem(g)
        c = chk.construction
        obj = {"u": c.u, "v": c.v, "w": c.w, "mean_t": rational_to_str(chk.mean_t),
               "mean_h": rational_to_str(chk.mean_h), "ok": chk.ok}
        lines = [f"u={c.u} v={c.v} w={c.w}", f"mean T: {_q(chk.mean_t, d)}",
                 f"mean H: {_q(chk.mean_h, d)}", f"ok: {chk.ok}"]
    _emit(obj, lines, args.format)
    return 0


def cmd_family(args: argparse.Namespace) -> int:
    g = parse_family(args.family)
    if args.format == "graph6":
        print(to_graph6(g))
    else:
        print(g.to_json())
    return 0


def _parse_range(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        if ":" in part:
            a, b, *step = (int(x) for x in part.split(":"))
            out.extend(range(a, b + 1, step[0] if step else 1))
        else:
            out.append(int(part))
    return out


def cmd_trends(args: argparse.Namespace) -> int:
    rows = TREND_TABLES[args.table](_parse_range(args.range))
    print(rows_to_csv(rows, args.digits) if args.format == "csv" else rows_to_json(rows, args.digits), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="subtree-mean", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="verb", required=True)

    c = sub.add_parser("compute", help="global subtree profile")
    _add_input(c)
    _add_output(c)
    c.set_defaults(func=cmd_compute)

    c = sub.add_parser("local", help="local subtree profile at a vertex or edge")
    _add_input(c)
    c.add_argument("--vertex", type=int)
    c.add_argument("--edge", help="u,v or u,v,copy")
    _add_output(c)
    c.set_defaults(func=cmd_local)

    c = sub.add_parser("scan", help="mean change for every non-edge")
    _add_input(c)
    _add_output(c)
    c.set_defaults(func=cmd_scan)

    c = sub.add_parser("search", help="exhaustive search over one order")
    c.add_argument("--order", type=int, required=True)
    c.add_argument("--mode", choices=SEARCH_MODES, default="conjecture1")
    c.add_argument("--out", help="directory for the JSON report and witness file")
    c.add_argument("--workers", type=int, default=1)
    _add_output(c)
    c.set_defaults(func=cmd_search)

    c = sub.add_parser("verify", help="single-graph checks")
    _add_input(c)
    c.add_argument("--check", choices=("lemma4", "proposition", "tree-theorem"), required=True)
    _add_output(c)
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("family", help="print a family member")
    c.add_argument("--family", required=True, help=f"family spec: {FAMILY_HELP}")
    c.add_argument("--format", choices=("json", "graph6"), default="json")
    c.set_defaults(func=cmd_family)

    c = sub.add_parser("trends", help="exact trend tables")
    c.add_argument("--table", choices=sorted(TREND_TABLES), required=True)
    c.add_argument("--range", required=True, help="e.g. 1024,2048,4096 or 8:14 or 3:200:1")
    c.add_argument("--format", choices=("csv", "json"), default="csv")
    c.add_argument("--digits", type=int, default=6)
    c.set_defaults(func=cmd_trends)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(stream=sys.stderr, level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except Exception as exc:  # surfaced as a message plus nonzero status
        log.error("%s: %s", type(exc).__name__, exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
