"""Amalgamation in C_F, realisation of strong extensions, and finite chains
approximating the generic structure.

Schedule used by :func:`build_generic_approximation`: each round lists every
task ``(A, B, embedding)`` over the structure as it stood when the round
began, sorts it by (size of A, labels of A, representative index, image),
shuffles it with the seeded RNG, and realises the tasks one at a time.  A
task stays valid for the rest of its round because d-closedness is
transitive along the chain.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Mapping

from .control import ControlFunction, ValidationReport, reference_F
from .errors import CapExceeded, GraphError, PreconditionError, UnknownVertexError
from .graph import Graph
from .predim import AmalgamSpec, free_amalgam, in_C_F, is_d_closed
from .symmetry import automorphisms, canonical_code, canonical_form

__all__ = [
    "amalgamate",
    "realize_extension",
    "enumerate_C_F",
    "Task",
    "GenericApproximation",
    "build_generic_approximation",
    "verify_chain",
    "ENUMERATION_CAP",
]

ENUMERATION_CAP = 7


def _image_closed(target: Graph, image, name: str) -> None:
    res = is_d_closed(target, image)
    if not res:
        raise PreconditionError(f"image of the base is not d-closed in {name}", res)


def _require_CF(G: Graph, F: ControlFunction, name: str) -> None:
    res = in_C_F(G, F)
    if not res:
        raise PreconditionError(f"{name} is not in C_F", res)


def amalgamate(spec: AmalgamSpec, F: ControlFunction | None = None) -> Graph:
    """Free amalgam of ``spec``, checking that the inputs lie in C_F with
    d-closed base images and that the result does too.

    Raises :class:`PreconditionError` carrying the failing check.  A failed
    conclusion would mean a bug in this library, and is reported the same way.
    """
    F = reference_F() if F is None else F
    spec.validate()
    for name, g in (("base", spec.base), ("left", spec.left), ("right", spec.right)):
        _require_CF(g, F, name)
    _image_closed(spec.left, spec.left_embedding.values(), "left")
    _image_closed(spec.right, spec.right_embedding.values(), "right")
    am = free_amalgam(spec)
    E = am.graph
    _require_CF(E, F, "amalgam")
    _image_closed(E, am.left_map.values(), "amalgam (left factor)")
    _image_closed(E, am.right_map.values(), "amalgam (right factor)")
    return E


def _extend(M: Graph, A, B: Graph, embedding: Mapping[str, str], prefix: str, start: int):
    A = frozenset(A)
    if set(embedding) != A:
        raise GraphError("embedding must be defined exactly on A")
    missing = A - M.vertices
    if missing:
        raise UnknownVertexError(missing)
    image = list(embedding.values())
    if len(set(image)) != len(image):
        raise GraphError("embedding is not injective")
    if not set(image) <= B.vertices:
        raise UnknownVertexError(set(image) - B.vertices)
    for u, v in combinations(sorted(A), 2):
        if M.has_edge(u, v) != B.has_edge(embedding[u], embedding[v]):
            raise GraphError(f"embedding is not induced at {u}, {v}")
    back = {b: a for a, b in embedding.items()}
    counter = start
    bmap = {}
    for v in B.order:
        if v in back:
            bmap[v] = back[v]
            continue
        name = f"{prefix}{counter}"
        while name in M.vertices:
            counter += 1
            name = f"{prefix}{counter}"
        bmap[v] = name
        counter += 1
    new = M.add(
        [bmap[v] for v in B.order],
        [(bmap[u], bmap[v]) for u, v in B.edges],
    )
    return new, bmap, counter


def realize_extension(
    M: Graph,
    A,
    B: Graph,
    embedding: Mapping[str, str],
    F: ControlFunction | None = None,
    prefix: str = "x",
    start: int = 0,
    check: bool = True,
) -> Graph:
    """Glue ``B`` onto ``M`` along ``A`` (free amalgam of M and B over A).

    Vertices of ``B`` outside the image of ``A`` are named ``prefix<n>`` for
    n counting up from ``start``, skipping names already in ``M``.
    """
    F = reference_F() if F is None else F
    if check:
        _require_CF(M, F, "M")
        _require_CF(B, F, "B")
        res = is_d_closed(M, A)
        if not res:
            raise PreconditionError("A is not d-closed in M", res)
    if check:
        _image_closed(B, embedding.values(), "B")
    new, bmap, _ = _extend(M, A, B, embedding, prefix, start)
    if check:
        _require_CF(new, F, "the extension")
        _image_closed(new, M.vertices, "the extension (old structure)")
        _image_closed(new, bmap.values(), "the extension (copy of B)")
    return new


def enumerate_C_F(F: ControlFunction | None = None, max_size: int = 3, cap: int = ENUMERATION_CAP) -> list[Graph]:
    """One representative per isomorphism class of C_F members with 1 to
    ``max_size`` vertices; ``[empty graph]`` when ``max_size`` is 0.

    Representatives use labels ``v0 ..``, are grouped by size, and within a
    size are ordered by canonical code.  C_F is closed under induced
    subgraphs, so every member of size n extends a member of size n - 1 by
    one vertex.
    """
    F = reference_F() if F is None else F
    if max_size < 0:
        raise ValueError("max_size must be nonnegative")
    if max_size > cap:
        raise CapExceeded(f"max_size {max_size} exceeds the enumeration cap of {cap}")
    if max_size == 0:
        return [Graph.empty()]
    out: list[Graph] = []
    layer = [Graph.empty()]
    for n in range(1, max_size + 1):
        found: dict[tuple, Graph] = {}
        new_v = f"_n{n}"
        for g in layer:
            order = g.order
            for r in range(len(order) + 1):
                for nbrs in combinations(order, r):
                    h = g.add([new_v], [(new_v, u) for u in nbrs])
                    code = canonical_code(h)
                    if code in found or not in_C_F(h, F):
                        continue
                    found[code] = canonical_form(h)[0]
        layer = [found[c] for c in sorted(found)]
        out.extend(layer)
    return out


@dataclass(frozen=True)
class Task:
    """One realised extension: the copy of ``extension`` glued over ``base``."""

    step: int
    round: int
    base: tuple[str, ...]
    extension: Graph
    embedding: tuple[tuple[str, str], ...]
    new_vertices: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "step": self.step,
            "round": self.round,
            "base": list(self.base),
            "extension": _graph_dict(self.extension),
            "embedding": [list(p) for p in self.embedding],
            "new_vertices": list(self.new_vertices),
        }

    @classmethod
    def from_dict(cls, d: dict) -> Task:
        return cls(
            d["step"],
            d["round"],
            tuple(d["base"]),
            _graph_from(d["extension"]),
            tuple((a, b) for a, b in d["embedding"]),
            tuple(d["new_vertices"]),
        )


def _graph_dict(G: Graph) -> dict:
    return {"vertices": list(G.order), "edges": [list(e) for e in G.edge_list]}


def _graph_from(d: dict) -> Graph:
    return Graph(d["vertices"], [tuple(e) for e in d["edges"]])


@dataclass
class GenericApproximation:
    """A chain M_0 <= M_1 <= ... with the task that produced each step."""

    chain: list[Graph]
    realized_tasks: list[Task]
    F: ControlFunction
    seed: int
    rounds: int
    size_budget: int
    pair_size_cap: int
    status: str = "complete"
    rounds_completed: int = 0

    @property
    def final(self) -> Graph:
        return self.chain[-1]

    def to_dict(self) -> dict:
        return {
            "F": self.F.to_dict(),
            "seed": self.seed,
            "rounds": self.rounds,
            "size_budget": self.size_budget,
            "pair_size_cap": self.pair_size_cap,
            "status": self.status,
            "rounds_completed": self.rounds_completed,
            "chain": [_graph_dict(g) for g in self.chain],
            "tasks": [t.to_dict() for t in self.realized_tasks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_dict(cls, d: dict) -> GenericApproximation:
        return cls(
            chain=[_graph_from(g) for g in d["chain"]],
            realized_tasks=[Task.from_dict(t) for t in d["tasks"]],
            F=ControlFunction.from_dict(d["F"]),
            seed=d["seed"],
            rounds=d["rounds"],
            size_budget=d["size_budget"],
            pair_size_cap=d["pair_size_cap"],
            status=d["status"],
            rounds_completed=d["rounds_completed"],
        )

    @classmethod
    def from_json(cls, text: str) -> GenericApproximation:
        return cls.from_dict(json.loads(text))


def _strong_embeddings(A_graph: Graph, B: Graph, autos: list[dict[str, str]]) -> list[tuple[str, ...]]:
    """Induced embeddings of ``A_graph`` into ``B`` with d-closed image, one per
    Aut(B)-orbit, each given as the image tuple over ``A_graph.order``."""
    a_order = A_graph.order
    seen = set()
    out = []
    for img in permutations(B.order, len(a_order)):
        if img in seen:
            continue
        ok = all(
            A_graph.has_edge(a_order[i], a_order[j]) == B.has_edge(img[i], img[j])
            for i, j in combinations(range(len(a_order)), 2)
        )
        if not ok or not is_d_closed(B, img):
            continue
        orbit = {tuple(g[x] for x in img) for g in autos}
        seen |= orbit
        out.append(min(orbit))
    return out


def _round_tasks(M: Graph, reps: list[Graph], cap: int, catalogue: dict) -> list[tuple]:
    tasks = []
    for size in range(0, cap):
        for A in combinations(M.order, size):
            if not is_d_closed(M, A):
                continue
            # embeddings depend only on the isomorphism type of A
            canon, to_canon = canonical_form(M.induced(A))
            for ri, B in enumerate(reps):
                if len(B) <= size:
                    continue
                key = (canon.edges, size, ri)
                if key not in catalogue:
                    if ri not in catalogue:
                        catalogue[ri] = automorphisms(B)
                    catalogue[key] = _strong_embeddings(canon, B, catalogue[ri])
                for img in catalogue[key]:
                    by_canon = dict(zip(canon.order, img))
                    emb = {a: by_canon[to_canon[a]] for a in A}
                    tasks.append(((size, A, ri, tuple(emb[a] for a in A)), B, emb))
    tasks.sort(key=lambda t: t[0])
    return tasks


def build_generic_approximation(
    F: ControlFunction | None = None,
    rounds: int = 1,
    size_budget: int = 50,
    pair_size_cap: int = 2,
    seed: int = 0,
    prefix: str = "x",
) -> GenericApproximation:
    """Grow a chain from the empty graph by realising strong extensions.

    Tasks pair a d-closed ``A`` of the current structure (|A| < cap) with a
    representative ``B`` from :func:`enumerate_C_F` (|A| < |B| <= cap) and an
    induced embedding of A onto a d-closed subset of B, one per Aut(B)-orbit.
    The build stops with status ``"budget_exhausted"`` just before a
    realisation that would exceed ``size_budget`` vertices.
    """
    F = reference_F() if F is None else F
    if rounds < 0 or size_budget < 0 or pair_size_cap < 1:
        raise ValueError("rounds and size_budget must be nonnegative and pair_size_cap positive")
    reps = enumerate_C_F(F, pair_size_cap)
    rng = random.Random(seed)
    M = Graph.empty()
    approx = GenericApproximation([M], [], F, seed, rounds, size_budget, pair_size_cap)
    counter = 0
    catalogue: dict = {}
    for r in range(rounds):
        tasks = _round_tasks(M, reps, pair_size_cap, catalogue)
        rng.shuffle(tasks)
        for key, B, emb in tasks:
            A = key[1]
            if len(M) + len(B) - len(A) > size_budget:
                approx.status = "budget_exhausted"
                approx.rounds_completed = r
                return approx
            M, bmap, counter = _extend(M, A, B, emb, prefix, counter)
            approx.chain.append(M)
            approx.realized_tasks.append(
                Task(
                    step=len(approx.chain) - 1,
                    round=r + 1,
                    base=tuple(A),
                    extension=B,
                    embedding=tuple((a, emb[a]) for a in A),
                    new_vertices=tuple(bmap[v] for v in B.order if v not in emb.values()),
                )
            )
    approx.rounds_completed = rounds
    return approx


def verify_chain(g: GenericApproximation) -> ValidationReport:
    """Re-check every chain invariant from scratch.

    Per step: M_i is an induced subgraph of M_{i+1}, M_i is in C_F, and
    M_i is d-closed in M_{i+1} (failures carry the d-closure as witness).  Each
    recorded task is also checked to have placed a d-closed copy of its
    extension graph.
    """
    report = ValidationReport()
    report.add("chain nonempty", bool(g.chain))
    for i, M in enumerate(g.chain):
        res = in_C_F(M, g.F)
        report.add(f"M{i} in C_F", res.ok, "" if res.ok else f"witness {sorted(res.witness)}")
    for i in range(len(g.chain) - 1):
        lo, hi = g.chain[i], g.chain[i + 1]
        induced = lo.vertices <= hi.vertices and hi.induced(lo.vertices) == lo
        report.add(f"M{i} induced in M{i + 1}", induced)
        if not induced:
            continue
        res = is_d_closed(hi, lo.vertices)
        detail = f"delta {hi.delta(lo.vertices)}"
        if not res:
            detail = f"witness {sorted(res.witness)} with delta change {res.delta_change}"
        report.add(f"M{i} d-closed in M{i + 1}", res.closed, detail)
    for t in g.realized_tasks:
        if not 0 < t.step < len(g.chain):
            report.add(f"task {t.step} in range", False)
            continue
        M = g.chain[t.step]
        emb = dict(t.embedding)
        new_iter = iter(t.new_vertices)
        copy = {}
        back = {b: a for a, b in emb.items()}
        for v in t.extension.order:
            copy[v] = back[v] if v in back else next(new_iter, None)
        ok = None not in copy.values() and set(copy.values()) <= M.vertices
        ok = ok and M.induced(copy.values()) == t.extension.relabel(copy)
        ok = ok and bool(is_d_closed(M, copy.values()))
        report.add(f"task {t.step} placed strongly", ok)
    return report
