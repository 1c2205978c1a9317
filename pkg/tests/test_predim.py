import oracles as O
import pytest
from conftest import make
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from strategies import graphs, sparse_graphs

from hrushovski import (
    AmalgamSpec,
    Graph,
    GraphError,
    PreconditionError,
    UnknownVertexError,
    d_closure,
    free_amalgam,
    in_C_F,
    in_C_gt0,
    is_d_closed,
    reference_F,
    submodularity_defect,
)
from hrushovski.encoding import single_edge_gadget
from hrushovski.predim import closure_bound, search_budget

F = reference_F()


def test_points_closed_in_cf_member(c4):
    assert is_d_closed(c4, {"a"})


def test_head_plus_base_not_closed(gadget_graph):
    res = is_d_closed(gadget_graph, {"a", "b", "c"})
    assert not res
    assert res.witness == gadget_graph.vertices
    assert res.delta_change == 0


def test_whole_set_closed(c4):
    assert is_d_closed(c4, c4.vertices)


def test_is_d_closed_unknown_vertex(c4):
    with pytest.raises(UnknownVertexError):
        is_d_closed(c4, {"z"})


def test_closure_examples(c4, gadget_graph):
    assert d_closure(c4, set()).closure == frozenset()
    assert d_closure(gadget_graph, {"a", "b", "c"}).closure == gadget_graph.vertices
    assert d_closure(gadget_graph, {"a"}).closure == {"a"}
    assert O.closure(gadget_graph.vertices, gadget_graph.edges, {"a", "b", "c"}) == gadget_graph.vertices


def test_closure_requires_cgt0(k6):
    with pytest.raises(PreconditionError):
        d_closure(k6, {"0"})


def test_closure_certificate_json(gadget_graph):
    cert = d_closure(gadget_graph, {"a", "b", "c"}, bound=closure_bound(F, 3))
    d = cert.to_dict()
    assert d["seed"] == ["a", "b", "c"]
    assert d["bound"] == 7
    assert [s["delta"] for s in d["steps"]][-1] == cert.closure_delta == 5
    assert cert.seed_delta == 5


def test_closure_bound_values():
    assert closure_bound(F, 1) == 1
    assert closure_bound(F, 2) == 116


def test_submodularity_examples(c4, triangle):
    two = make([], ["x", "y"])
    assert submodularity_defect(two, {"x"}, {"y"}) == 0
    assert submodularity_defect(c4, {"a", "b", "c"}, {"c", "d", "a"}) == 0
    assert submodularity_defect(triangle, {"a", "b"}, {"b", "c"}) == 1


def test_free_amalgam_examples():
    ax = make([("a", "x")])
    ay = make([("a", "y")])
    am = free_amalgam(AmalgamSpec.over_common(ax, ay))
    assert am.graph.edges == {("a", "x"), ("a", "y")}
    assert am.graph.delta() == 4

    pt = make([], ["a"])
    e = make([("a", "b")])
    star = make([], ["a"])
    for _ in range(4):
        star = free_amalgam(AmalgamSpec(pt, star, e, {"a": "a"}, {"a": "a"})).graph
    assert len(star) == 5 and all(star.has_edge("a", v) for v in star.vertices - {"a"})

    empty = Graph.empty()
    two = free_amalgam(AmalgamSpec(empty, make([], ["p"]), make([], ["p"]), {}, {})).graph
    assert len(two) == 2 and two.num_edges == 0 and two.delta() == 4


def test_free_amalgam_rejects_non_induced():
    base = make([], ["a", "b"])
    with pytest.raises(GraphError):
        free_amalgam(AmalgamSpec(base, make([("a", "b")]), make([], ["a", "b"]), {"a": "a", "b": "b"}, {"a": "a", "b": "b"}))


def test_membership_examples(c4, triangle, k6):
    assert in_C_gt0(Graph.empty())
    assert in_C_gt0(c4)
    k4 = make([(str(i), str(j)) for i in range(4) for j in range(i + 1, 4)])
    assert in_C_gt0(k4)
    res = in_C_gt0(k6)
    assert not res and res.delta <= 0
    assert in_C_F(c4, F)
    res = in_C_F(triangle, F)
    assert not res and res.witness == triangle.vertices and res.delta == 3
    for n in range(1, 12):
        path = make([(f"p{i}", f"p{i+1}") for i in range(n - 1)], ["p0"])
        assert in_C_F(path, F)


def test_membership_witness_is_minimal():
    g = make([("a", "b"), ("b", "c"), ("c", "a"), ("c", "d")])
    res = in_C_F(g, F)
    assert res.witness == {"a", "b", "c"}


def test_search_budget_env(monkeypatch):
    monkeypatch.setenv("HRUSHOVSKI_SEARCH_BUDGET", "17")
    assert search_budget() == 17
    monkeypatch.setenv("HRUSHOVSKI_SEARCH_BUDGET", "x")
    with pytest.raises(ValueError):
        search_budget()


def test_search_budget_exceeded(monkeypatch):
    from hrushovski import SearchBudgetExceeded

    monkeypatch.setenv("HRUSHOVSKI_SEARCH_BUDGET", "3")
    g = make([(f"p{i}", f"p{i+1}") for i in range(8)])
    with pytest.raises(SearchBudgetExceeded):
        d_closure(g, {"p0"}, method="exhaustive", check=False)


# -- oracle equivalence ------------------------------------------------------------


@settings(max_examples=120, deadline=None)
@given(graphs(max_n=8), st.data())
def test_is_d_closed_matches_oracle(G, data):
    A = data.draw(st.frozensets(st.sampled_from(G.order), max_size=len(G))) if len(G) else frozenset()
    expected = O.is_closed(G.vertices, G.edges, A)
    for method in ("exhaustive", "flow"):
        assert bool(is_d_closed(G, A, method=method)) == expected


@settings(max_examples=120, deadline=None)
@given(sparse_graphs(max_n=8), st.data())
def test_closure_matches_definition(G, data):
    assume(O.in_Cgt0(G.vertices, G.edges))
    A = data.draw(st.frozensets(st.sampled_from(G.order), max_size=len(G))) if len(G) else frozenset()
    expected = O.closure(G.vertices, G.edges, A)
    for method in ("exhaustive", "flow"):
        assert d_closure(G, A, method=method).closure == expected


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=9, max_density=0.6))
def test_membership_matches_oracle(G):
    for method in ("exhaustive", "structured"):
        a = in_C_F(G, F, method=method)
        assert a.ok == O.in_CF(G.vertices, G.edges)
        b = in_C_gt0(G, method=method)
        assert b.ok == O.in_Cgt0(G.vertices, G.edges)
        if not a.ok:
            assert a.delta == O.delta(G.edges, a.witness) and a.delta < O.F_ref(len(a.witness))


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=9), st.data())
def test_submodularity(G, data):
    B = data.draw(st.frozensets(st.sampled_from(G.order))) if len(G) else frozenset()
    C = data.draw(st.frozensets(st.sampled_from(G.order))) if len(G) else frozenset()
    defect = submodularity_defect(G, B, C)
    cross = sum(1 for u, v in G.edges if (u in B - C and v in C - B) or (v in B - C and u in C - B))
    assert defect == cross >= 0


def test_gadget_closure_exhaustive_vs_flow():
    g = single_edge_gadget().graph
    for A in ({"a", "b", "c"}, {"a", "c"}, {"c"}, {"l1(a,b)", "a"}):
        assert d_closure(g, A, method="exhaustive").closure == d_closure(g, A, method="flow").closure
