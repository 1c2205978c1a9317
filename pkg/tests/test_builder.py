import json

import oracles as O
import pytest
from conftest import make

from hrushovski import (
    AmalgamSpec,
    CapExceeded,
    Graph,
    PreconditionError,
    amalgamate,
    are_isomorphic,
    automorphisms,
    build_generic_approximation,
    enumerate_C_F,
    in_C_F,
    is_d_closed,
    realize_extension,
    reference_F,
    verify_chain,
)
from hrushovski.builder import GenericApproximation

F = reference_F()


def test_amalgamate_edges_over_point():
    pt = make([], ["a"])
    E = amalgamate(AmalgamSpec(pt, make([("a", "x")]), make([("a", "y")]), {"a": "a"}, {"a": "a"}), F)
    assert E.edges == {("a", "x"), ("a", "y")}
    assert in_C_F(E, F)


def test_amalgamate_two_points_over_empty():
    E = amalgamate(AmalgamSpec(Graph.empty(), make([], ["p"]), make([], ["q"]), {}, {}), F)
    assert len(E) == 2 and E.delta() == 4


def test_amalgamate_rejects_non_closed_base():
    # the base {a, c} of a path a-b-c is not d-closed (adding b keeps delta 4)
    path = make([("a", "b"), ("b", "c")])
    base = make([], ["a", "c"])
    with pytest.raises(PreconditionError) as info:
        amalgamate(AmalgamSpec(base, path, base, {"a": "a", "c": "c"}, {"a": "a", "c": "c"}), F)
    assert info.value.certificate is not None


def test_realize_point_to_edge():
    M = make([], ["a"])
    out = realize_extension(M, {"a"}, make([("u", "v")]), {"a": "u"}, F)
    assert out.edges == {("a", "x0")}


def test_realize_edge_to_gadget(gadget_graph):
    M = make([("p", "q")])
    out = realize_extension(M, {"p", "q"}, gadget_graph, {"p": "a", "q": "b"}, F)
    assert len(out) == 7 and is_d_closed(out, {"p", "q"})
    assert are_isomorphic(out, gadget_graph)


def test_realize_repeated_gives_star():
    M = make([], ["a"])
    for i in range(5):
        M = realize_extension(M, {"a"}, make([("u", "v")]), {"a": "u"}, F, start=i)
    assert len(M) == 6 and M.degree("a") == 5 and M.num_edges == 5


def test_realize_rejects_non_closed_A():
    M = make([("a", "b"), ("b", "c")])
    with pytest.raises(PreconditionError):
        realize_extension(M, {"a", "c"}, make([], ["a", "c", "z"]), {"a": "a", "c": "c"}, F)


def test_enumerate_examples():
    assert enumerate_C_F(F, 0) == [Graph.empty()]
    pts = enumerate_C_F(F, 1)
    assert len(pts) == 1 and len(pts[0]) == 1
    three = enumerate_C_F(F, 3)
    shapes = sorted((len(g), g.num_edges) for g in three)
    assert shapes == [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)]
    assert not any(len(g) == 3 and g.num_edges == 3 for g in three)


def test_enumerate_counts_match_brute_force():
    reps = enumerate_C_F(F, 5)
    by_size = [sum(1 for g in reps if len(g) == n) for n in range(1, 6)]
    oracle = [sum(1 for e in O.iso_classes(n) if O.in_CF(range(n), e)) for n in range(1, 6)]
    assert by_size == oracle == [1, 2, 3, 7, 14]
    for i, g in enumerate(reps):
        for h in reps[i + 1 :]:
            assert not are_isomorphic(g, h)


def test_enumerate_cap():
    with pytest.raises(CapExceeded):
        enumerate_C_F(F, 8)


def test_one_round_cap_one():
    g = build_generic_approximation(F, rounds=1, size_budget=10, pair_size_cap=1, seed=0)
    assert len(g.final) == 1 and g.final.num_edges == 0
    assert g.status == "complete"


def test_degrees_grow_with_rounds():
    rounds = 4
    g = build_generic_approximation(F, rounds=rounds, size_budget=10_000, pair_size_cap=2, seed=3)
    born = {}
    for t in g.realized_tasks:
        for v in t.new_vertices:
            born[v] = t.round
    M = g.final
    for v, r in born.items():
        assert M.degree(v) >= rounds - r
    assert min(M.degree(v) for v, r in born.items() if r == 1) >= 3


def test_budget_is_a_terminal_state():
    g = build_generic_approximation(F, rounds=10, size_budget=12, pair_size_cap=2, seed=0)
    assert g.status == "budget_exhausted"
    assert len(g.final) <= 12


def test_determinism_and_json_round_trip():
    a = build_generic_approximation(F, rounds=3, size_budget=60, pair_size_cap=3, seed=11)
    b = build_generic_approximation(F, rounds=3, size_budget=60, pair_size_cap=3, seed=11)
    assert a.to_json() == b.to_json()
    back = GenericApproximation.from_json(a.to_json())
    assert back.to_json() == a.to_json()
    assert list(json.loads(a.to_json()))[:3] == ["F", "seed", "rounds"]


def test_seed_changes_schedule():
    a = build_generic_approximation(F, rounds=2, size_budget=100, pair_size_cap=2, seed=1)
    b = build_generic_approximation(F, rounds=2, size_budget=100, pair_size_cap=2, seed=2)
    assert a.to_json() != b.to_json()


def test_verify_chain_passes_on_builder_output():
    g = build_generic_approximation(F, rounds=2, size_budget=80, pair_size_cap=3, seed=5)
    rep = verify_chain(g)
    assert rep.ok, rep.failed()


def test_verify_chain_detects_triangle():
    g = build_generic_approximation(F, rounds=1, size_budget=20, pair_size_cap=2, seed=0)
    bad = g.final.add(["t1", "t2", "t3"], [("t1", "t2"), ("t2", "t3"), ("t1", "t3")])
    g.chain.append(bad)
    rep = verify_chain(g)
    assert f"M{len(g.chain) - 1} in C_F" in rep.failed()


def test_verify_chain_detects_non_induced():
    g = build_generic_approximation(F, rounds=1, size_budget=20, pair_size_cap=2, seed=0)
    g.chain[2] = g.chain[2].add(["zz"])
    rep = verify_chain(g)
    assert "M2 induced in M3" in rep.failed()


def test_closedness_is_automorphism_invariant():
    g = build_generic_approximation(F, rounds=2, size_budget=12, pair_size_cap=2, seed=4)
    M = g.final
    autos = automorphisms(M)
    for A in (set(), {M.order[0]}, set(M.order[:2]), set(M.order[:3])):
        for perm in autos[:20]:
            assert bool(is_d_closed(M, A)) == bool(is_d_closed(M, {perm[v] for v in A}))
