"""Command-line front end.

Exit status: 0 when the command succeeds and any tested property holds, 1
when a tested property is false (a witness is printed), 2 for usage, input or
library errors.  ``--json`` switches any report to JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .builder import build_generic_approximation, enumerate_C_F, verify_chain
from .control import ControlFunction, reference_F, validate_control_function
from .encoding import build_gadget, detect_labels, single_edge_gadget, verify_gadget
from .errors import HrushovskiError, ParseError
from .graph import Graph, Orientation, relative_predimension
from .io import format_graph, format_orientation, read_graph, read_orientation
from .orientation import enumerate_k_orientations, find_k_orientation, is_k_sparse
from .predim import AmalgamSpec, closure_bound, d_closure, free_amalgam, in_C_F, in_C_gt0, is_d_closed

EXIT_OK, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _vertex_list(text: str | None) -> list[str]:
    if text is None or text.strip() == "":
        return []
    return [t for t in (p.strip() for p in text.split(",")) if t]


def _load_F(path) -> ControlFunction:
    if path is None:
        return reference_F()
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(str(path), 0, exc.strerror or str(exc)) from exc
    try:
        return ControlFunction.from_json(text)
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(str(path), 0, f"bad control function: {exc}") from exc


def _graph_json(G: Graph) -> dict:
    return {"vertices": list(G.order), "edges": [list(e) for e in G.edge_list]}


class Out:
    """Collects either text lines or one JSON document."""

    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.lines: list[str] = []
        self.doc: dict = {}

    def text(self, line: str) -> None:
        self.lines.append(line)

    def emit(self, stream) -> None:
        if self.as_json:
            stream.write(json.dumps(self.doc, indent=1) + "\n")
        elif self.lines:
            stream.write("\n".join(self.lines) + "\n")


# -- commands -----------------------------------------------------------------------


def cmd_predim(args, out: Out) -> int:
    G = read_graph(args.graph)
    if args.over is not None:
        value = relative_predimension(G, _vertex_list(args.over))
    elif args.subset is not None:
        value = G.delta(_vertex_list(args.subset))
    else:
        value = G.delta()
    out.doc = {"predimension": value}
    out.text(str(value))
    return EXIT_OK


def _witness_out(w, out: Out) -> None:
    out.doc["witness"] = {"vertices": sorted(w.violating_set), "edges": w.edge_count, "bound": w.bound}
    out.text(f"witness: {sorted(w.violating_set)}")
    out.text(str(w))


def cmd_sparse(args, out: Out) -> int:
    G = read_graph(args.graph)
    w = is_k_sparse(G, args.k)
    out.doc = {"sparse": w is None, "k": args.k}
    if w is None:
        out.text(f"{args.k}-sparse")
        return EXIT_OK
    out.text(f"not {args.k}-sparse")
    _witness_out(w, out)
    return EXIT_FALSE


def cmd_orient(args, out: Out) -> int:
    G = read_graph(args.graph)
    res = find_k_orientation(G, args.k)
    if isinstance(res, Orientation):
        out.doc = {"orientable": True, "k": args.k, "arcs": [list(a) for a in sorted(res.arcs)]}
        out.text(format_orientation(res).rstrip("\n") or "# no edges")
        return EXIT_OK
    out.doc = {"orientable": False, "k": args.k}
    out.text(f"not {args.k}-orientable")
    _witness_out(res, out)
    return EXIT_FALSE


def cmd_enumerate_orientations(args, out: Out) -> int:
    G = read_graph(args.graph)
    found = enumerate_k_orientations(G, args.k, cap=args.cap)
    out.doc = {"k": args.k, "count": len(found), "orientations": [[list(a) for a in sorted(o.arcs)] for o in found]}
    out.text(f"{len(found)} orientations")
    for i, o in enumerate(found):
        out.text(f"# {i}")
        out.text(format_orientation(o).rstrip("\n"))
    return EXIT_OK if found else EXIT_FALSE


def cmd_closed(args, out: Out) -> int:
    G = read_graph(args.graph)
    res = is_d_closed(G, _vertex_list(args.set))
    out.doc = res.to_dict()
    if res:
        out.text("d-closed")
        return EXIT_OK
    out.text("not d-closed")
    out.text(f"witness: {sorted(res.witness)} (delta change {res.delta_change})")
    return EXIT_FALSE


def cmd_closure(args, out: Out) -> int:
    G = read_graph(args.graph)
    A = _vertex_list(args.set)
    bound = args.bound
    if bound is None and args.use_F_bound:
        bound = closure_bound(_load_F(args.f), len(A))
    cert = d_closure(G, A, bound=bound)
    out.doc = cert.to_dict()
    out.text(f"closure: {', '.join(sorted(cert.closure))}")
    out.text(f"delta: {cert.seed_delta} -> {cert.closure_delta}")
    for v, d in cert.steps:
        out.text(f"  + {v}: {d}")
    return EXIT_OK


def cmd_cf_check(args, out: Out) -> int:
    G = read_graph(args.graph)
    if args.gt0:
        res, cls = in_C_gt0(G), "C_>0"
    else:
        res, cls = in_C_F(G, _load_F(args.f)), "C_F"
    out.doc = {"class": cls, **res.to_dict()}
    if res:
        out.text(f"in {cls}")
        return EXIT_OK
    out.text(f"not in {cls}")
    out.text(f"witness: {sorted(res.witness)} (delta {res.delta}, needs >= {res.required})")
    return EXIT_FALSE


def cmd_amalgam(args, out: Out) -> int:
    left, right = read_graph(args.left), read_graph(args.right)
    shared = None if args.over is None else _vertex_list(args.over)
    spec = AmalgamSpec.over_common(left, right, shared)
    if args.check:
        from .builder import amalgamate

        E = amalgamate(spec, _load_F(args.f))
    else:
        E = free_amalgam(spec).graph
    out.doc = {"graph": _graph_json(E), "predimension": E.delta()}
    out.text(format_graph(E).rstrip("\n"))
    return EXIT_OK


def cmd_build_generic(args, out: Out) -> int:
    F = _load_F(args.f)
    g = build_generic_approximation(F, args.rounds, args.budget, args.cap, args.seed)
    report = verify_chain(g) if args.verify else None
    out.doc = g.to_dict()
    if report is not None:
        out.doc["verification"] = report.to_dict()
    final = g.final
    out.text(f"status: {g.status} after {g.rounds_completed} complete rounds")
    out.text(f"steps: {len(g.chain) - 1}, vertices: {len(final)}, edges: {final.num_edges}")
    if report is not None:
        out.text(f"verify_chain: {'pass' if report.ok else 'FAIL'}")
        for name in report.failed():
            out.text(f"  failed: {name}")
    if args.dump:
        out.text(format_graph(final).rstrip("\n"))
    return EXIT_OK if report is None or report.ok else EXIT_FALSE


def cmd_enumerate_class(args, out: Out) -> int:
    reps = enumerate_C_F(_load_F(args.f), args.max_size)
    out.doc = {"count": len(reps), "graphs": [_graph_json(g) for g in reps]}
    out.text(f"{len(reps)} isomorphism classes")
    for i, g in enumerate(reps):
        edges = " ".join(f"{u}-{v}" for u, v in g.edge_list)
        out.text(f"{i}: n={len(g)} m={g.num_edges} {edges}".rstrip())
    return EXIT_OK


def cmd_gadget(args, out: Out) -> int:
    A = read_graph(args.graph)
    tau = read_orientation(args.orientation, A)
    g = build_gadget(A, tau, args.head, _load_F(args.f))
    out.doc = {
        "graph": _graph_json(g.graph),
        "head": g.head,
        "labels": [{"arc": list(k), "vertices": list(v)} for k, v in sorted(g.labels.items())],
    }
    out.text(format_graph(g.graph).rstrip("\n"))
    if args.verify:
        report = verify_gadget(A, tau, _load_F(args.f), args.head)
        out.doc["verification"] = report.to_dict()
        out.text(report.to_text().rstrip("\n"))
        return EXIT_OK if report.overall else EXIT_FALSE
    return EXIT_OK


def cmd_decode(args, out: Out) -> int:
    G = read_graph(args.graph)
    found = detect_labels(G, args.head)
    if args.base is not None:
        base = set(_vertex_list(args.base))
        found = {p for p in found if p[0] in base and p[1] in base}
    pairs = sorted(found)
    out.doc = {"head": args.head, "pairs": [list(p) for p in pairs]}
    for a, b in pairs:
        out.text(f"a {a} {b}")
    if not pairs:
        out.text("# no labels")
    return EXIT_OK


def cmd_verify_tables(args, out: Out) -> int:
    F = reference_F()
    g = single_edge_gadget()
    base = Graph.from_edges([("a", "b")])
    report = verify_gadget(base, [("a", "b")], F)
    vcf = validate_control_function(F)
    diffs = report.golden_diffs()
    ok = report.overall and vcf.ok and all(diffs.values()) and detect_labels(g) == {("a", "b")}
    out.doc = {"ok": ok, "tables": diffs, "gadget": report.to_dict(), "control_function": vcf.to_dict()}
    out.text(report.to_text().rstrip("\n"))
    out.text("")
    out.text(f"control function checks: {'pass' if vcf.ok else 'FAIL ' + ', '.join(vcf.failed())}")
    for name, same in diffs.items():
        out.text(f"golden {name}: {'match' if same else 'DIFFERS'}")
    return EXIT_OK if ok else EXIT_FALSE


# -- parser ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--f", metavar="FILE", help="control function JSON (default: the reference F)")

    p = _Parser(prog="hrushovski", description="Predimension, sparsity and Hrushovski-construction tools.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_, description=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("predim", cmd_predim, "predimension of a graph, a subset, or relative to a subset")
    sp.add_argument("graph")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--subset", metavar="V,..", help="predimension of this induced subgraph")
    g.add_argument("--over", metavar="V,..", help="predimension of the graph relative to this subset")

    for name, fn, help_ in (
        ("sparse", cmd_sparse, "test k-sparsity; print a minimal witness on failure"),
        ("orient", cmd_orient, "find a k-orientation by matching, or a witness"),
    ):
        sp = add(name, fn, help_)
        sp.add_argument("graph")
        sp.add_argument("--k", type=int, default=2)

    sp = add("enumerate-orientations", cmd_enumerate_orientations, "list every k-orientation")
    sp.add_argument("graph")
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--cap", type=int, default=20, help="maximum number of edges")

    sp = add("closed", cmd_closed, "test whether a vertex set is d-closed")
    sp.add_argument("graph")
    sp.add_argument("--set", required=True, metavar="V,..")

    sp = add("closure", cmd_closure, "d-closure of a vertex set with certificate")
    sp.add_argument("graph")
    sp.add_argument("--set", required=True, metavar="V,..")
    sp.add_argument("--bound", type=int, help="largest superset size to search")
    sp.add_argument("--use-F-bound", action="store_true", help="bound the search by the control function")

    sp = add("cf-check", cmd_cf_check, "membership in C_F (or C_>0 with --gt0)")
    sp.add_argument("graph")
    sp.add_argument("--gt0", action="store_true")

    sp = add("amalgam", cmd_amalgam, "free amalgam of two graphs over their shared vertices")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.add_argument("--over", metavar="V,..", help="shared vertices to glue (default: all common names)")
    sp.add_argument("--check", action="store_true", help="check all C_F amalgamation hypotheses and conclusions")

    sp = add("build-generic", cmd_build_generic, "build a finite approximation of the generic structure")
    sp.add_argument("--rounds", type=int, default=3)
    sp.add_argument("--budget", type=int, default=50)
    sp.add_argument("--cap", type=int, default=2)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--verify", action="store_true", help="re-check the chain")
    sp.add_argument("--dump", action="store_true", help="print the final graph")

    sp = add("enumerate-class", cmd_enumerate_class, "isomorphism classes of C_F up to a size")
    sp.add_argument("--max-size", type=int, default=3)

    sp = add("gadget", cmd_gadget, "build the label gadget over a graph and orientation")
    sp.add_argument("graph")
    sp.add_argument("orientation")
    sp.add_argument("--head", default="c")
    sp.add_argument("--verify", action="store_true")

    sp = add("decode", cmd_decode, "pairs whose label pattern is present at a head vertex")
    sp.add_argument("graph")
    sp.add_argument("--head", required=True)
    sp.add_argument("--base", metavar="V,..", help="only report pairs inside this set")

    add("verify-paper", cmd_verify_tables, "recompute the single-edge gadget tables and diff against golden copies")
    return p


def main(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(argv)
    except _Usage as exc:
        stderr.write(f"{parser.prog}: usage error: {exc}\n")
        return EXIT_ERROR
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    out = Out(args.json)
    try:
        code = args.func(args, out)
    except (HrushovskiError, ValueError, KeyError, RecursionError) as exc:
        kind = type(exc).__name__
        if args.json:
            stdout.write(json.dumps({"error": {"type": kind, "message": str(exc)}}, indent=1) + "\n")
        stderr.write(f"{parser.prog}: {kind}: {exc}\n")
        return EXIT_ERROR
    out.emit(stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
