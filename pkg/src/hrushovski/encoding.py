"""The label gadget that encodes an orientation into the neighbourhood of a
single head vertex, and the matching decoder.

For every arc ``(a, b)`` the gadget adds a 4-cycle ``l1 l2 l3 l4`` hanging off
the head at ``l1``, with ``l2`` and ``l4`` joined to the start vertex ``a`` and
``l3`` joined to the end vertex ``b``.  Decoding searches for that pattern
existentially, exactly as the label formula states it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

from . import tables
from .control import ControlFunction, compare_exact, reference_F
from .errors import GraphError, OrientationError, PreconditionError
from .graph import Graph, Orientation, edge_key
from .predim import d_closure, in_C_F, is_d_closed, submodularity_defect

__all__ = [
    "Gadget",
    "LABEL_EDGES",
    "build_gadget",
    "label_witnesses",
    "detect_labels",
    "decode",
    "closure_traps_labels",
    "TableRow",
    "VerificationReport",
    "verify_gadget",
    "single_edge_gadget",
]

# label edges in role names; "x" is the head
LABEL_EDGES = (
    ("x", "l1"),
    ("l1", "l2"),
    ("l2", "l3"),
    ("l3", "l4"),
    ("l4", "l1"),
    ("l2", "a"),
    ("l4", "a"),
    ("l3", "b"),
)


def _label_name(i: int, a: str, b: str) -> str:
    return f"l{i}({a},{b})"


@dataclass(frozen=True)
class Gadget:
    graph: Graph
    base: frozenset[str]
    head: str
    labels: dict[tuple[str, str], tuple[str, str, str, str]] = field(hash=False)

    def label_edges(self, arc: tuple[str, str]) -> list[tuple[str, str]]:
        """The eight edges that make up the label of ``arc``."""
        a, b = arc
        l1, l2, l3, l4 = self.labels[arc]
        role = {"x": self.head, "a": a, "b": b, "l1": l1, "l2": l2, "l3": l3, "l4": l4}
        return [(role[u], role[v]) for u, v in LABEL_EDGES]


def _arcs_of(A: Graph, tau) -> list[tuple[str, str]]:
    arcs = sorted(tau.arcs if isinstance(tau, Orientation) else {(str(x), str(y)) for x, y in tau})
    out: dict[str, int] = {}
    seen = set()
    for x, y in arcs:
        if not A.has_edge(x, y):
            raise OrientationError(f"arc ({x}, {y}) is not an edge of the base")
        key = edge_key(x, y)
        if key in seen:
            raise OrientationError(f"edge {key} is oriented both ways")
        seen.add(key)
        out[x] = out.get(x, 0) + 1
        if out[x] > 2:
            raise OrientationError(f"vertex {x} has out-degree above 2")
    return arcs


def build_gadget(
    A: Graph,
    tau,
    head_name: str = "c",
    F: ControlFunction | None = None,
    check: bool = True,
) -> Gadget:
    """The gadget over ``A`` for the arcs ``tau`` (an :class:`Orientation` or
    any iterable of pairs), with a fresh head ``head_name``.

    Label vertices are named ``l1(a,b) .. l4(a,b)``.  ``tau`` may orient any
    subset of the edges of ``A`` but must keep out-degrees at most 2.
    """
    arcs = _arcs_of(A, tau)
    head = str(head_name)
    if head in A.vertices:
        raise GraphError(f"head name {head!r} is already a vertex of the base")
    if check:
        res = in_C_F(A, reference_F() if F is None else F)
        if not res:
            raise PreconditionError("base graph is not in C_F", res)
    vertices = set(A.vertices) | {head}
    edges = list(A.edges)
    labels = {}
    for a, b in arcs:
        quad = tuple(_label_name(i, a, b) for i in range(1, 5))
        clash = vertices & set(quad)
        if clash:
            raise GraphError(f"label vertex names collide with existing vertices: {sorted(clash)}")
        vertices |= set(quad)
        labels[(a, b)] = quad
        role = {"x": head, "a": a, "b": b, "l1": quad[0], "l2": quad[1], "l3": quad[2], "l4": quad[3]}
        edges.extend((role[u], role[v]) for u, v in LABEL_EDGES)
    return Gadget(Graph(vertices, edges), frozenset(A.vertices), head, labels)


def single_edge_gadget() -> Gadget:
    """Gadget for the edge ``a b`` oriented ``(a, b)``, head ``c``."""
    return build_gadget(Graph.from_edges([("a", "b")]), [("a", "b")], "c")


def label_witnesses(G: Graph, head: str) -> Iterator[tuple[str, str, tuple[str, str, str, str]]]:
    """Every ``(a, b, (l1, l2, l3, l4))`` satisfying the label pattern at
    ``head``, in label order of ``(l1, l2, l4, a, l3, b)``.

    Extra edges among the witnesses are allowed; only the listed adjacencies
    and the distinctness of all seven vertices are required.
    """
    if head not in G.vertices:
        raise GraphError(f"unknown head vertex {head!r}")
    N = G.neighbours
    for l1 in sorted(N(head)):
        around = sorted(N(l1) - {head})
        for l2 in around:
            for l4 in around:
                if l4 == l2:
                    continue
                common = N(l2) & N(l4)
                for a in sorted(common - {head, l1}):
                    for l3 in sorted(common - {head, l1, a}):
                        used = {head, l1, l2, l3, l4, a}
                        for b in sorted((N(l3) & N(a)) - used):
                            yield a, b, (l1, l2, l3, l4)


def detect_labels(G: Graph | Gadget, head: str | None = None) -> set[tuple[str, str]]:
    """Pairs ``(a, b)`` whose label pattern is present at ``head``.

    Given a :class:`Gadget`, only pairs of base vertices are reported (and the
    head defaults to the gadget's).  Given a bare graph, every pair is
    considered: in a gadget the start vertex ``a`` and ``l3`` have the same
    neighbours within a label, so ``(l3, b)`` also satisfies the pattern there.
    """
    base = None
    if isinstance(G, Gadget):
        base = G.base
        head = G.head if head is None else head
        G = G.graph
    if head is None:
        raise TypeError("a head vertex is required for a bare graph")
    found = {(a, b) for a, b, _ in label_witnesses(G, head)}
    if base is not None:
        found = {(a, b) for a, b in found if a in base and b in base}
    return found


def decode(G: Graph | Gadget, head: str | None = None) -> set[tuple[str, str]]:
    """The decoding map at finite scale; same as :func:`detect_labels`."""
    return detect_labels(G, head)


def closure_traps_labels(B_extended: Graph, a: str, b: str, head: str) -> bool:
    """Whether every label witness for ``(a, b)`` at ``head`` lies inside the
    d-closure of ``{a, b, head}``.  Vacuously true without witnesses."""
    quads = [q for x, y, q in label_witnesses(B_extended, head) if (x, y) == (a, b)]
    if not quads:
        return True
    cl = d_closure(B_extended, {a, b, head}).closure
    return all(set(q) <= cl for q in quads)


# -- verification -----------------------------------------------------------------


@dataclass(frozen=True)
class TableRow:
    cells: tuple[str, ...]
    value: int | str
    ok: bool = True

    def render(self) -> str:
        return " | ".join([*self.cells, str(self.value)])


@dataclass
class VerificationReport:
    a_closed_in_b: list[TableRow] = field(default_factory=list)
    small_structures: list[TableRow] = field(default_factory=list)
    b_in_cf: list[TableRow] = field(default_factory=list)
    closure_table: list[TableRow] = field(default_factory=list)
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def overall(self) -> bool:
        rows = self.a_closed_in_b + self.small_structures + self.b_in_cf + self.closure_table
        return all(self.checks.values()) and all(r.ok for r in rows)

    def rendered(self) -> dict[str, str]:
        """The four tables in the golden plain-text format (empty when the
        input is not the single-edge case)."""
        out = {}
        if self.a_closed_in_b:
            out["strong"] = _render("C \\ A | delta(C/A)", self.a_closed_in_b)
        if self.small_structures:
            cyc = [r for r in self.small_structures if len(r.cells) == 1]
            direct = [r for r in self.small_structures if len(r.cells) == 2]
            out["small_structures"] = _render("C | proof that C is in C_F", cyc) + _render(
                "C | delta(C) | F(|C|)", direct
            )
        if self.b_in_cf:
            out["y_table"] = _render("J u X | label | delta(J u X / A u {c})", self.b_in_cf)
        if self.closure_table:
            out["closure"] = _render("X / Y | delta(X/Y)", self.closure_table)
        return out

    def golden_diffs(self) -> dict[str, bool]:
        """Per table, whether the rendering matches the embedded golden copy."""
        r = self.rendered()
        return {k: r.get(k) == v for k, v in tables.GOLDEN.items()}

    def to_dict(self) -> dict:
        def rows(rs):
            return [{"cells": list(r.cells), "value": r.value, "ok": r.ok} for r in rs]

        return {
            "overall": self.overall,
            "checks": dict(self.checks),
            "a_closed_in_b": rows(self.a_closed_in_b),
            "small_structures": rows(self.small_structures),
            "b_in_cf": rows(self.b_in_cf),
            "closure_table": rows(self.closure_table),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    def to_text(self) -> str:
        parts = []
        for name, text in self.rendered().items():
            parts.append(f"[{name}]\n{text}")
        parts.append("[checks]\n" + "".join(f"{k} | {'pass' if v else 'FAIL'}\n" for k, v in self.checks.items()))
        parts.append(f"overall | {'pass' if self.overall else 'FAIL'}\n")
        return "\n".join(parts)


def _render(header: str, rows: list[TableRow]) -> str:
    return header + "\n" + "".join(r.render() + "\n" for r in rows)


def _strict_F_text(delta: int, n: int, F: ControlFunction) -> tuple[str, bool]:
    sign = compare_exact(delta, n, F)
    rel = {1: "<", 0: "=", -1: ">"}[sign]
    return f"F({n}) {rel} {delta}", sign >= 0


def _single_edge_tables(g: Gadget, arc: tuple[str, str], F: ControlFunction, report: VerificationReport) -> None:
    a, b = arc
    l1, l2, l3, l4 = g.labels[arc]
    role = {"a": a, "b": b, "c": g.head, "l1": l1, "l2": l2, "l3": l3, "l4": l4}
    B = g.graph

    def real(names: Iterable[str]) -> set[str]:
        return {role[n] for n in names}

    def spaced(names) -> str:
        return " ".join(names)

    base = real("ab")
    d_base = B.delta(base)
    for extra in tables.STRONG_ROWS:
        v = B.delta(base | real(extra)) - d_base
        report.a_closed_in_b.append(TableRow((", ".join(extra),), v, v > 0))

    for cyc in tables.SMALL_CYCLES:
        sub = B.induced(real(cyc))
        is_cycle = sub.num_edges == 4 and all(sub.degree(v) == 2 for v in sub.vertices) and len(sub.components()) == 1
        ok = is_cycle and bool(in_C_F(sub, F))
        report.checks[f"{spaced(cyc)} is a 4-cycle in C_F"] = ok
    report.small_structures.append(
        TableRow((", ".join(spaced(c) for c in tables.SMALL_CYCLES),), "C is a 4-cycle", all(
            report.checks[f"{spaced(c)} is a 4-cycle in C_F"] for c in tables.SMALL_CYCLES
        ))
    )
    for whole, left, right, over in tables.SMALL_AMALGAMS:
        W, L, R, O = real(whole), real(left), real(right), real(over)
        ok = (
            L | R == W
            and L & R == O
            and submodularity_defect(B, L, R) == 0
            and bool(in_C_F(B.induced(L), F))
            and bool(in_C_F(B.induced(R), F))
            and bool(is_d_closed(B.induced(L), O))
            and bool(is_d_closed(B.induced(R), O))
            and bool(in_C_F(B.induced(W), F))
        )
        text = f"free amalgam of {spaced(left)}, {spaced(right)} over {spaced(over)}"
        report.small_structures.append(TableRow((spaced(whole),), text, ok))
    for names in tables.SMALL_DIRECT:
        d = B.delta(real(names))
        text, ok = _strict_F_text(d, len(names), F)
        report.small_structures.append(TableRow((spaced(names), str(d)), text, ok))
    report.checks["a b l1 l2 l3 l4 in C_F"] = bool(in_C_F(B.induced(real(["a", "b", "l1", "l2", "l3", "l4"])), F))
    report.checks["label structure L(a,b) in C_F"] = bool(in_C_F(B.induced(real(["c", "l1", "l2", "l3", "l4"])), F))

    over = real("abc")
    for i, names in enumerate(tables.Y_ROWS, start=1):
        Y = real(names)
        v = B.delta(Y) - B.delta(Y & over)
        report.b_in_cf.append(TableRow((spaced(names), f"Y{i}"), v))

    labels = ["l1", "l2", "l3", "l4"]
    for xs in tables.CLOSURE_ROWS:
        ys = [n for n in labels if n not in xs] + ["a", "b", "c"]
        v = B.delta(real(xs) | real(ys)) - B.delta(real(ys))
        report.closure_table.append(TableRow((f"{', '.join(xs)} / {', '.join(ys)}",), v, v <= 0))


def verify_gadget(A: Graph, tau, F: ControlFunction | None = None, head_name: str = "c") -> VerificationReport:
    """Build the gadget and re-derive every property of it from primitives.

    Always checks A d-closed in B, B in C_F, and the decoding round trip.  For
    a single edge with a single arc, also fills the four tables.
    """
    F = reference_F() if F is None else F
    report = VerificationReport()
    g = build_gadget(A, tau, head_name, F)
    B = g.graph
    report.checks["A d-closed in B"] = bool(is_d_closed(B, A.vertices))
    report.checks["B in C_F"] = bool(in_C_F(B, F))
    report.checks["decoding round trip"] = detect_labels(g) == set(g.labels)
    report.checks["at most two labels per start vertex"] = all(
        sum(1 for a, _ in g.labels if a == v) <= 2 for v in A.vertices
    )
    if len(A) == 2 and A.num_edges == 1 and len(g.labels) == 1:
        _single_edge_tables(g, next(iter(g.labels)), F, report)
        for name, same in report.golden_diffs().items():
            report.checks[f"table {name} matches golden copy"] = same
    return report
