import oracles as O
import pytest
from conftest import make

from hrushovski import (
    AmalgamSpec,
    GraphError,
    OrientationError,
    automorphisms,
    build_gadget,
    closure_traps_labels,
    decode,
    detect_labels,
    enumerate_C_F,
    enumerate_k_orientations,
    free_amalgam,
    in_C_F,
    is_d_closed,
    reference_F,
    verify_gadget,
)
from hrushovski.encoding import label_witnesses, single_edge_gadget
from hrushovski.tables import GOLDEN

F = reference_F()
AB = make([("a", "b")])


def test_single_edge_gadget_shape():
    g = single_edge_gadget()
    B = g.graph
    assert (len(B), B.num_edges, B.delta()) == (7, 9, 5)
    l1, l2, l3, l4 = g.labels[("a", "b")]
    degrees = {v: B.degree(v) for v in ("a", "b", "c", l1, l2, l3, l4)}
    assert degrees == {"a": 3, "b": 2, "c": 1, l1: 3, l2: 3, l3: 3, l4: 3}


def test_empty_orientation_adds_isolated_head():
    g = build_gadget(AB, [], "c")
    assert g.graph.vertices == {"a", "b", "c"} and g.graph.degree("c") == 0


def test_path_gadget():
    P = make([("a", "b"), ("b", "d")])
    g = build_gadget(P, [("a", "b"), ("b", "d")], "c")
    assert len(g.graph) == 12
    assert is_d_closed(g.graph, P.vertices)
    assert detect_labels(g) == {("a", "b"), ("b", "d")}


def test_detect_single_edge():
    g = single_edge_gadget()
    assert detect_labels(g) == {("a", "b")}
    assert ("b", "a") not in detect_labels(g.graph, "c")


def test_bare_graph_detection_follows_the_formula_literally():
    g = single_edge_gadget()
    l3 = g.labels[("a", "b")][2]
    found = detect_labels(g.graph, "c")
    assert found == {("a", "b"), (l3, "b")}
    assert found == O.label_pairs(g.graph.vertices, g.graph.edges, "c")


def test_no_cycles_no_labels():
    tree = make([("c", "x"), ("x", "y"), ("y", "z"), ("x", "w")])
    assert detect_labels(tree, "c") == set()
    assert decode(tree, "c") == set()


def test_build_gadget_errors():
    with pytest.raises(OrientationError):
        build_gadget(AB, [("a", "z")])
    with pytest.raises(OrientationError):
        build_gadget(AB, [("a", "b"), ("b", "a")])
    star = make([("h", "1"), ("h", "2"), ("h", "3")])
    with pytest.raises(OrientationError):
        build_gadget(star, [("h", "1"), ("h", "2"), ("h", "3")])
    with pytest.raises(GraphError):
        build_gadget(AB, [("a", "b")], head_name="a")
    clash = make([("a", "b"), ("b", "l1(a,b)")])
    with pytest.raises(GraphError):
        build_gadget(clash, [("a", "b")])


def test_closure_traps_labels():
    g = single_edge_gadget().graph
    assert closure_traps_labels(g, "a", "b", "c")
    tail = make([("a", "t1"), ("t1", "t2"), ("t2", "t3")])
    bigger = free_amalgam(AmalgamSpec.over_common(g, tail)).graph
    assert detect_labels(bigger, "c") == detect_labels(g, "c")
    assert closure_traps_labels(bigger, "a", "b", "c")
    assert closure_traps_labels(make([("a", "b")], ["c"]), "a", "b", "c")


def test_verify_gadget_tables():
    rep = verify_gadget(AB, [("a", "b")], F)
    assert rep.overall
    rows = {r.cells[0]: r.value for r in rep.a_closed_in_b}
    assert rows["l2"] == 1 and rows["c, l1"] == 3 and rows["c, l1, l2, l3, l4"] == 2
    y = {r.cells[1]: (r.cells[0], r.value) for r in rep.b_in_cf}
    assert y["Y11"] == ("c l1 l2 l3 l4 a b", 0) and y["Y1"] == ("c l1 l2 a", 1)
    cl = {r.cells[0]: r.value for r in rep.closure_table}
    assert cl["l1, l2, l3, l4 / a, b, c"] == 0
    assert cl["l1, l3 / l2, l4, a, b, c"] == -2
    assert rep.rendered() == GOLDEN


def test_tables_against_brute_force_predimension():
    B = single_edge_gadget().graph
    names = {"a": "a", "b": "b", "c": "c", **{f"l{i}": f"l{i}(a,b)" for i in range(1, 5)}}
    rep = verify_gadget(AB, [("a", "b")], F)
    for r in rep.a_closed_in_b:
        C = {"a", "b"} | {names[x] for x in r.cells[0].split(", ")}
        assert r.value == O.delta(B.edges, C) - O.delta(B.edges, {"a", "b"})
    for r in rep.b_in_cf:
        Y = {names[x] for x in r.cells[0].split()}
        assert r.value == O.delta(B.edges, Y) - O.delta(B.edges, Y & {"a", "b", "c"})


def test_report_serialises():
    rep = verify_gadget(AB, [("a", "b")], F)
    d = rep.to_dict()
    assert d["overall"] is True and len(d["closure_table"]) == 15
    assert "[closure]" in rep.to_text()


@pytest.mark.parametrize("A", enumerate_C_F(F, 4), ids=lambda g: f"n{len(g)}m{g.num_edges}")
def test_round_trip_small(A):
    for o in enumerate_k_orientations(A, 2):
        g = build_gadget(A, o)
        assert detect_labels(g) == set(o.arcs)


@pytest.mark.parametrize("A", [g for g in enumerate_C_F(F, 5) if len(g) == 5], ids=lambda g: f"m{g.num_edges}")
def test_gadget_closed_and_in_cf(A):
    orients = enumerate_k_orientations(A, 2)
    for o in orients[:: max(1, len(orients) // 4)]:
        rep = verify_gadget(A, o, F)
        assert rep.checks["A d-closed in B"] and rep.checks["B in C_F"] and rep.checks["decoding round trip"]


def test_every_label_edge_is_necessary():
    for A in enumerate_C_F(F, 4):
        for o in enumerate_k_orientations(A, 2):
            g = build_gadget(A, o, check=False)
            for arc in g.labels:
                for u, v in g.label_edges(arc):
                    assert arc not in detect_labels(g.graph.remove_edge(u, v), g.head)


def test_decoding_commutes_with_automorphisms_fixing_head():
    P = make([("a", "b"), ("b", "d")])
    g = build_gadget(P, [("a", "b"), ("d", "b")])
    B = g.graph
    found = detect_labels(B, "c")
    autos = [p for p in automorphisms(B, cap=12) if p["c"] == "c"]
    assert len(autos) > 1
    for p in autos:
        assert {(p[a], p[b]) for a, b in found} == detect_labels(B.relabel(p), "c")


def test_at_most_two_labels_per_start_vertex():
    for A in enumerate_C_F(F, 4):
        for o in enumerate_k_orientations(A, 2):
            g = build_gadget(A, o, check=False)
            for v in A.vertices:
                assert sum(1 for a, _ in g.labels if a == v) <= 2


def test_witness_listing():
    g = single_edge_gadget()
    quads = [q for a, b, q in label_witnesses(g.graph, "c") if (a, b) == ("a", "b")]
    l = g.labels[("a", "b")]
    assert set(quads) == {l, (l[0], l[3], l[2], l[1])}
