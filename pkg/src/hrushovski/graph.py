"""Finite simple graphs, orientations and predimension.

Vertices are opaque string labels.  Every deterministic ordering in the
package uses plain lexicographic order on those labels; internally each graph
keeps a dense index and one adjacency bitmask per vertex so that subset
computations can run on integers.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from functools import cached_property

from .errors import GraphError, OrientationError, UnknownVertexError

__all__ = [
    "Graph",
    "Orientation",
    "SparsityWitness",
    "induced_subgraph",
    "predimension",
    "relative_predimension",
    "edge_key",
    "iter_bits",
]


def edge_key(u: str, v: str) -> tuple[str, str]:
    """Canonical storage form of the unordered pair {u, v}."""
    return (u, v) if u < v else (v, u)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """A finite simple undirected graph.

    ``edges`` holds each unordered pair once, as a sorted 2-tuple.  Use
    :meth:`from_edges` when the vertex set should be inferred.
    """

    vertices: frozenset[str] = frozenset()
    edges: frozenset[tuple[str, str]] = frozenset()

    def __init__(self, vertices: Iterable = (), edges: Iterable = ()):
        vs = frozenset(str(v) for v in vertices)
        es = set()
        for e in edges:
            u, v = (str(x) for x in e)
            if u == v:
                raise GraphError(f"loop at vertex {u!r}")
            es.add(edge_key(u, v))
        missing = {x for e in es for x in e} - vs
        if missing:
            raise UnknownVertexError(missing)
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", frozenset(es))

    @classmethod
    def from_edges(cls, edges: Iterable, vertices: Iterable = ()) -> Graph:
        edges = [tuple(str(x) for x in e) for e in edges]
        vs = {str(v) for v in vertices}
        vs.update(x for e in edges for x in e)
        return cls(vs, edges)

    @classmethod
    def empty(cls) -> Graph:
        return cls()

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self.vertices

    def __repr__(self) -> str:
        es = ", ".join(f"{u}-{v}" for u, v in self.edge_list)
        return f"Graph(|V|={len(self)}, E=[{es}])"

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def order(self) -> tuple[str, ...]:
        """Vertices in lexicographic order; position = internal index."""
        return tuple(sorted(self.vertices))

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.order)}

    @cached_property
    def edge_list(self) -> tuple[tuple[str, str], ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Neighbourhood bitmask of each vertex, by internal index."""
        adj = [0] * len(self.order)
        idx = self.index
        for u, v in self.edges:
            i, j = idx[u], idx[v]
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return tuple(adj)

    @cached_property
    def _neighbours(self) -> dict[str, frozenset[str]]:
        nb: dict[str, set[str]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return {v: frozenset(s) for v, s in nb.items()}

    def neighbours(self, v: str) -> frozenset[str]:
        try:
            return self._neighbours[v]
        except KeyError:
            raise UnknownVertexError([v]) from None

    def degree(self, v: str) -> int:
        return len(self.neighbours(v))

    def has_edge(self, u: str, v: str) -> bool:
        return edge_key(u, v) in self.edges

    def arcs(self) -> frozenset[tuple[str, str]]:
        """The symmetric ordered form E^A of the edge relation."""
        return frozenset(self.edges) | frozenset((v, u) for u, v in self.edges)

    # -- bitmask helpers -------------------------------------------------

    def mask_of(self, subset: Iterable[str]) -> int:
        idx = self.index
        mask = 0
        missing = []
        for v in subset:
            i = idx.get(v)
            if i is None:
                missing.append(v)
            else:
                mask |= 1 << i
        if missing:
            raise UnknownVertexError(missing)
        return mask

    def set_of(self, mask: int) -> frozenset[str]:
        order = self.order
        return frozenset(order[i] for i in iter_bits(mask))

    @property
    def full_mask(self) -> int:
        return (1 << len(self.order)) - 1

    def edges_in_mask(self, mask: int) -> int:
        adj = self.adjacency
        return sum((adj[i] & mask).bit_count() for i in iter_bits(mask)) // 2

    def delta_mask(self, mask: int) -> int:
        return 2 * mask.bit_count() - self.edges_in_mask(mask)

    def delta(self, subset: Iterable[str] | None = None) -> int:
        """Predimension of the induced subgraph on ``subset`` (default: all)."""
        if subset is None:
            return 2 * len(self.vertices) - len(self.edges)
        return self.delta_mask(self.mask_of(subset))

    # -- derived graphs --------------------------------------------------

    def induced(self, subset: Iterable[str]) -> Graph:
        s = frozenset(subset)
        unknown = s - self.vertices
        if unknown:
            raise UnknownVertexError(unknown)
        return Graph(s, (e for e in self.edges if e[0] in s and e[1] in s))

    def relabel(self, mapping: Mapping[str, str]) -> Graph:
        """Rename vertices; labels absent from ``mapping`` are kept."""
        f = lambda v: mapping.get(v, v)  # noqa: E731
        new = [f(v) for v in self.vertices]
        if len(set(new)) != len(new):
            raise GraphError("relabelling is not injective")
        return Graph(new, ((f(u), f(v)) for u, v in self.edges))

    def add(self, vertices: Iterable = (), edges: Iterable = ()) -> Graph:
        edges = [tuple(str(x) for x in e) for e in edges]
        vs = set(self.vertices) | {str(v) for v in vertices}
        return Graph(vs, list(self.edges) + edges)

    def remove_edge(self, u: str, v: str) -> Graph:
        key = edge_key(u, v)
        if key not in self.edges:
            raise GraphError(f"no edge {u}-{v}")
        return Graph(self.vertices, self.edges - {key})

    def is_induced_subgraph_of(self, other: Graph) -> bool:
        return self.vertices <= other.vertices and other.induced(self.vertices) == self

    def components(self) -> list[frozenset[str]]:
        seen: set[str] = set()
        out = []
        for v in self.order:
            if v in seen:
                continue
            stack, comp = [v], {v}
            while stack:
                x = stack.pop()
                for y in self._neighbours[x]:
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            out.append(frozenset(comp))
        return out


def induced_subgraph(G: Graph, S: Iterable[str]) -> Graph:
    return G.induced(S)


def predimension(G: Graph) -> int:
    """2|V| - |E|.  Negative values are possible for dense graphs."""
    return G.delta()


def relative_predimension(G: Graph, B: Iterable[str]) -> int:
    """delta(G) - delta(G[B])."""
    return G.delta() - G.delta(B)


@dataclass(frozen=True)
class SparsityWitness:
    """A vertex set spanning more than ``k * |S|`` edges."""

    violating_set: frozenset[str]
    edge_count: int
    bound: int

    def __post_init__(self):
        if not self.violating_set or self.edge_count <= self.bound:
            raise ValueError("not a sparsity violation")

    def __str__(self) -> str:
        return (
            f"{len(self.violating_set)} vertices, {self.edge_count} edges > {self.bound}"
        )


@dataclass(frozen=True)
class Orientation:
    """A set of arcs over ``base``.

    Construction does not validate; :meth:`validate` (called by
    ``check_orientation``) enforces that each edge carries exactly one arc.
    """

    base: Graph
    arcs: frozenset[tuple[str, str]] = field(default_factory=frozenset)

    def __init__(self, base: Graph, arcs: Iterable = ()):
        object.__setattr__(self, "base", base)
        object.__setattr__(
            self, "arcs", frozenset((str(x), str(y)) for x, y in arcs)
        )

    def validate(self) -> None:
        seen = set()
        for x, y in self.arcs:
            key = edge_key(x, y)
            if key not in self.base.edges:
                raise OrientationError(f"arc ({x}, {y}) is not an edge of the base graph")
            if key in seen:
                raise OrientationError(f"edge {key[0]}-{key[1]} carries both arcs")
            seen.add(key)
        missing = self.base.edges - seen
        if missing:
            u, v = min(missing)
            raise OrientationError(f"edge {u}-{v} carries no arc")

    @cached_property
    def _out(self) -> dict[str, set[str]]:
        out: dict[str, set[str]] = {v: set() for v in self.base.vertices}
        for x, y in self.arcs:
            out.setdefault(x, set()).add(y)
        return out

    def out_neighbours(self, x: str) -> frozenset[str]:
        return frozenset(self._out.get(x, ()))

    def in_neighbours(self, y: str) -> frozenset[str]:
        return frozenset(x for x, z in self.arcs if z == y)

    def out_degree(self, x: str) -> int:
        return len(self._out.get(x, ()))

    def in_degree(self, y: str) -> int:
        return sum(1 for _, z in self.arcs if z == y)

    def max_out_degree(self) -> int:
        return max((len(s) for s in self._out.values()), default=0)

    def act(self, perm: Mapping[str, str]) -> Orientation:
        """Image under a vertex permutation: g.rho = {(gx, gy)}."""
        return Orientation(self.base.relabel(perm), ((perm[x], perm[y]) for x, y in self.arcs))

    def restrict(self, subset: Iterable[str]) -> Orientation:
        s = frozenset(subset)
        return Orientation(
            self.base.induced(s), ((x, y) for x, y in self.arcs if x in s and y in s)
        )
