"""Command line front end.

Exit codes: 0 success, 2 bad input, 3 size guard or refused computation,
4 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Callable, Optional

from .complex import (
    SimplicialComplex,
    build_delta,
    c_complex,
    euler_characteristic,
    is_pure,
    l_complex,
)
from .families import (
    HomotopyType,
    c_homotopy,
    delta_cycle_homotopy,
    delta_string_homotopy,
    l_homotopy,
    reduce_essential_tree,
)
from .graph import (
    DirectedGraph,
    GraphFormatError,
    complete_double_graph,
    double_cycle_graph,
    double_string_graph,
    parse_graph,
    string_with_tail,
)
from .homology import BoundaryError, homology, homology_to_json, reduced_nonzero, simplicial_homology
from .quotient.cells import x_chain_complex
from .quotient.spectral import DiagonalHypothesisError, d1_page, e1_homology
from .quotient.symmetry import GuardExceeded, f_table, format_f_table
from .shelling import (
    NoCompleteSource,
    ShellingSizeError,
    facet_label,
    has_complete_source,
    homology_facets,
    shelling_order,
    spanning_facets_count,
    verify_shelling,
)

EXIT_OK, EXIT_INPUT, EXIT_GUARD, EXIT_INTERNAL = 0, 2, 3, 4
DEFAULT_MAX_FACES = 1_000_000

BUILTINS: dict[str, Callable[[int], DirectedGraph]] = {
    "complete": complete_double_graph,
    "cycle": double_cycle_graph,
    "string": double_string_graph,
    "string_tail": string_with_tail,
}


class InputError(ValueError):
    pass


class Disagreement(RuntimeError):
    pass


def builtin_graph(spec: str) -> DirectedGraph:
    name, sep, arg = spec.partition(":")
    if not sep or name not in BUILTINS:
        raise InputError(f"unknown builtin {spec!r}; use one of {', '.join(k + ':n' for k in BUILTINS)}")
    try:
        n = int(arg)
    except ValueError:
        raise InputError(f"builtin size must be an integer, got {arg!r}") from None
    return BUILTINS[name](n)


def load_graph(args) -> tuple[DirectedGraph, dict]:
    if args.builtin and args.file:
        raise InputError("give either --builtin or --file, not both")
    if args.builtin:
        return builtin_graph(args.builtin), {"builtin": args.builtin}
    if args.file:
        try:
            text = Path(args.file).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {args.file}: {exc}") from None
        return parse_graph(text), {"file": args.file}
    raise InputError("a graph is required: --builtin NAME:n or --file PATH")


def _groups_text(groups) -> str:
    nz = reduced_nonzero(groups)
    if not nz:
        return "all reduced homology vanishes"
    return ", ".join(f"H~{d} = {g}" for d, g in sorted(nz.items()))


def cmd_delta_homology(args, out) -> dict:
    G, inputs = load_graph(args)
    t0 = time.perf_counter()
    K = build_delta(G)
    n_faces = sum(K.f_vector())
    if n_faces > (args.max_cells or DEFAULT_MAX_FACES):
        raise GuardExceeded(f"{n_faces} faces exceed the guard; raise --max-cells")
    t1 = time.perf_counter()
    groups = simplicial_homology(K)
    t2 = time.perf_counter()
    pure = is_pure(K, G.n_vertices - 2) if G.n_vertices >= 2 else True
    out(f"vertices {G.n_vertices}, edges {G.n_edges}")
    out(f"f-vector {K.f_vector()}, reduced Euler characteristic {euler_characteristic(K)}")
    out(f"pure of full dimension: {pure}")
    out(_groups_text(groups))
    return {
        "inputs": inputs,
        "results": {
            "f_vector": K.f_vector(),
            "euler_characteristic": euler_characteristic(K),
            "pure_full_dimension": pure,
            **homology_to_json(groups),
        },
        "timings": {"build": t1 - t0, "homology": t2 - t1},
    }


def cmd_shelling(args, out) -> dict:
    if args.n is not None:
        if args.builtin or args.file:
            raise InputError("give either --n or a graph, not both")
        G, inputs = complete_double_graph(args.n), {"n": args.n}
    else:
        G, inputs = load_graph(args)
    source = has_complete_source(G)
    if source is None:
        raise NoCompleteSource("graph has no complete source; the label shelling does not apply")
    t0 = time.perf_counter()
    order = shelling_order(G)
    t1 = time.perf_counter()
    ok = verify_shelling(build_delta(G), order, max_facets=args.max_cells or 10_000)
    t2 = time.perf_counter()
    spheres = spanning_facets_count(order)
    if not args.quiet:
        for f in order:
            label = ",".join(map(str, facet_label(G, f, source)))
            edges = " ".join(f"{G.edges[e][0]}>{G.edges[e][1]}" for e in f)
            out(f"{label} | {edges}")
    out(f"facets {len(order)}, shelling verified: {ok}, homology facets {spheres}")
    results = {"facets": len(order), "verified": ok, "homology_facets": spheres, "complete_source": source}
    if args.n is not None:
        results["leaf_facets"] = len(homology_facets(args.n))
    return {"inputs": inputs, "results": results, "timings": {"order": t1 - t0, "verify": t2 - t1}}


def cmd_quotient(args, out) -> dict:
    n, mode = args.n, args.mode
    override = args.max_cells is not None
    results: dict = {"n": n, "mode": mode}
    timings: dict = {}
    direct = e1 = None
    if mode in ("direct", "both"):
        t0 = time.perf_counter()
        X = x_chain_complex(n, override=override, max_cells=args.max_cells)
        direct = homology(X)
        timings["direct"] = time.perf_counter() - t0
        results["cells"] = {str(d): r for d, r in zip(range(X.min_degree, X.max_degree + 1), X.ranks)}
        results["direct"] = homology_to_json(direct)["homology"]
        if args.dump_cells:
            Path(args.dump_cells).write_text(
                "".join(f"{d} | {c.string}\n" for d, level in zip(range(-1, n - 1), X.basis) for c in level)
            )
        out(f"direct: {_groups_text(direct)}")
    if mode in ("e1", "both"):
        t0 = time.perf_counter()
        page = d1_page(n, override=override)
        results["admissible"] = {str(k): len(v) for k, v in page.basis.items()}
        e1 = e1_homology(n, page=page)
        timings["e1"] = time.perf_counter() - t0
        results["e1"] = homology_to_json(e1)["homology"]
        if args.dump_e1:
            Path(args.dump_e1).write_text(page.dump())
        out(f"first page: {_groups_text(e1)}")
    if mode == "both":
        agree = direct == e1
        results["agree"] = agree
        if not agree:
            raise Disagreement("direct and first-page homology differ")
        out("pipelines agree")
    return {"inputs": {"n": n, "mode": mode}, "results": results, "timings": timings}


def cmd_fkn(args, out) -> dict:
    t0 = time.perf_counter()
    table = f_table(args.n_max, override=args.max_cells is not None)
    out(format_f_table(table))
    return {
        "inputs": {"n_max": args.n_max},
        "results": {"f": [{"k": k, "n": n, "count": c} for (k, n), c in sorted(table.items())]},
        "timings": {"table": time.perf_counter() - t0},
    }


def _family(name: str, n: int) -> tuple[HomotopyType | None, SimplicialComplex, Optional[dict]]:
    if name == "L":
        return delta_string_homotopy(n), build_delta(double_string_graph(n)), None
    if name == "C":
        return delta_cycle_homotopy(n), build_delta(double_cycle_graph(n)), None
    if name == "path-ind":
        return l_homotopy(n)[0], l_complex(n), None
    if name == "cycle-ind":
        return c_homotopy(n), c_complex(n), None
    if name == "L-tail":
        G = string_with_tail(n)
        red = reduce_essential_tree(G)
        return None, build_delta(G), red.betti
    raise InputError(f"unknown family {name!r}")


FAMILIES = ("L", "C", "path-ind", "cycle-ind", "L-tail")


def cmd_family(args, out) -> dict:
    t0 = time.perf_counter()
    try:
        predicted, K, betti = _family(args.name, args.n)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    groups = simplicial_homology(K)
    observed = {g.degree: g.betti for g in groups if g.betti}
    torsion = any(g.torsion for g in groups)
    if predicted is not None:
        expected = predicted.betti()
        out(f"predicted {predicted}")
    else:
        expected = betti
        out("predicted by reduction: " + ("irreducible" if betti is None else str(betti)))
    match = expected is not None and expected == observed and not torsion
    out(f"direct: {_groups_text(groups)}; match: {match}")
    return {
        "inputs": {"family": args.name, "n": args.n},
        "results": {
            "predicted": str(predicted) if predicted is not None else expected,
            "match": match,
            **homology_to_json(groups),
        },
        "timings": {"total": time.perf_counter() - t0},
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dirforest", description="Complexes of directed forests and their quotients.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write the run report as JSON ('-' for stdout)")
    common.add_argument("--max-cells", type=int, default=None, help="raise the size guard to this many cells")
    common.add_argument("--threads", type=int, default=1, help="cap on worker threads (computations are sequential)")
    graph_src = argparse.ArgumentParser(add_help=False)
    graph_src.add_argument("--builtin", help="complete:n, cycle:n, string:n or string_tail:n")
    graph_src.add_argument("--file", help="graph file: vertex count, then one 'u v' edge per line")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("delta-homology", parents=[common, graph_src], help="homology of the forest complex of a graph")
    p.set_defaults(func=cmd_delta_homology)

    p = sub.add_parser("shelling", parents=[common, graph_src], help="label shelling of a graph with a complete source")
    p.add_argument("--n", type=int, help="use the complete double graph on n vertices")
    p.add_argument("--quiet", action="store_true", help="omit the facet listing")
    p.set_defaults(func=cmd_shelling)

    p = sub.add_parser("quotient", parents=[common], help="homology of the symmetric quotient of the complete case")
    p.add_argument("n", type=int)
    p.add_argument("--mode", choices=["direct", "e1", "both"], default="both")
    p.add_argument("--dump-cells", metavar="PATH", help="write one 'dim | forest' line per cell")
    p.add_argument("--dump-e1", metavar="PATH", help="write the d1 matrices as sparse triplets")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("fkn", parents=[common], help="table of admissible forest counts")
    p.add_argument("n_max", type=int)
    p.set_defaults(func=cmd_fkn)

    p = sub.add_parser("family", parents=[common], help="closed-form homotopy type versus direct homology")
    p.add_argument("name", choices=FAMILIES)
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_family)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be positive")
    lines: list[str] = []

    def out(s: str):
        lines.append(s)
        if args.json != "-":
            print(s)

    t0 = time.perf_counter()
    try:
        report = args.func(args, out)
        code = EXIT_OK
    except (InputError, GraphFormatError, NoCompleteSource) as exc:
        report, code = {"error": str(exc)}, EXIT_INPUT
    except (GuardExceeded, ShellingSizeError, DiagonalHypothesisError) as exc:
        report, code = {"error": str(exc)}, EXIT_GUARD
    except (BoundaryError, Disagreement, AssertionError) as exc:
        report, code = {"error": str(exc)}, EXIT_INTERNAL
    except ValueError as exc:
        report, code = {"error": str(exc)}, EXIT_INPUT
    if "error" in report:
        print(f"error: {report['error']}", file=sys.stderr)
    report = {
        "command": args.command,
        "argv": list(sys.argv[1:] if argv is None else argv),
        "exit_code": code,
        **report,
    }
    report.setdefault("timings", {})
    report["timings"]["wall"] = time.perf_counter() - t0
    if args.json:
        text = json.dumps(report, indent=2, sort_keys=True, default=str)
        if args.json == "-":
            print(text)
        else:
            Path(args.json).write_text(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
