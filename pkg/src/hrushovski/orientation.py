"""k-sparsity and k-orientations.

A graph is k-orientable iff it is k-sparse.  The constructive direction goes
through a bipartite graph whose left side is the edge set and whose right side
is ``V x {0..k-1}``: an edge may be matched to a slot of either endpoint, and
an edge matched to a slot of ``x`` is directed out of ``x``.  When no
left-saturated matching exists, the left vertices reachable from an unmatched
edge by alternating paths form a Hall violator; their endpoints span more than
``k`` times as many edges as vertices.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations

from .errors import CapExceeded, OrientationError
from .graph import Graph, Orientation, SparsityWitness, edge_key

__all__ = [
    "HopcroftKarp",
    "find_k_orientation",
    "is_k_sparse",
    "minimal_sparsity_witness",
    "check_orientation",
    "enumerate_k_orientations",
    "orientation_from_bits",
]

_INF = float("inf")

MINIMAL_WITNESS_MAX_VERTICES = 20
DEFAULT_ORIENTATION_CAP = 20


class HopcroftKarp:
    """Maximum bipartite matching by shortest augmenting paths.

    ``adj[u]`` lists the right vertices adjacent to left vertex ``u``; left
    vertices are ``0..len(adj)-1`` and right vertices ``0..n_right-1``.  The
    lists are scanned in the given order, so the result is deterministic.
    """

    def __init__(self, adj: list[list[int]], n_right: int):
        self.adj = adj
        self.n_left = len(adj)
        self.n_right = n_right
        self.match_left: list[int | None] = [None] * self.n_left
        self.match_right: list[int | None] = [None] * n_right
        self._dist: list[float] = [_INF] * self.n_left

    def _bfs(self) -> bool:
        dist = self._dist
        queue = deque()
        for u in range(self.n_left):
            if self.match_left[u] is None:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = _INF
        found = False
        while queue:
            u = queue.popleft()
            for r in self.adj[u]:
                w = self.match_right[r]
                if w is None:
                    found = True
                elif dist[w] == _INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    def _dfs(self, u: int) -> bool:
        # iterative to stay clear of the recursion limit on long paths
        stack = [(u, iter(self.adj[u]))]
        path: list[tuple[int, int]] = []
        while stack:
            x, it = stack[-1]
            advanced = False
            for r in it:
                w = self.match_right[r]
                if w is None:
                    path.append((x, r))
                    for lu, rr in path:
                        self.match_left[lu] = rr
                        self.match_right[rr] = lu
                    return True
                if self._dist[w] == self._dist[x] + 1:
                    path.append((x, r))
                    stack.append((w, iter(self.adj[w])))
                    advanced = True
                    break
            if not advanced:
                self._dist[x] = _INF
                stack.pop()
                if path:
                    path.pop()
        return False

    def run(self) -> int:
        size = 0
        while self._bfs():
            for u in range(self.n_left):
                if self.match_left[u] is None and self._dfs(u):
                    size += 1
        return sum(m is not None for m in self.match_left)

    def hall_violator(self) -> set[int]:
        """Left vertices reachable from unmatched left vertices by alternating
        paths.  Empty when the matching saturates the left side."""
        start = [u for u in range(self.n_left) if self.match_left[u] is None]
        seen = set(start)
        queue = deque(start)
        while queue:
            u = queue.popleft()
            for r in self.adj[u]:
                w = self.match_right[r]
                if w is not None and w not in seen:
                    seen.add(w)
                    queue.append(w)
        return seen


def _bipartite(G: Graph, k: int):
    edges = G.edge_list
    idx = G.index
    adj = []
    for u, v in edges:
        adj.append([idx[u] * k + i for i in range(k)] + [idx[v] * k + i for i in range(k)])
    return edges, adj


def _witness_for(G: Graph, vertex_set, k: int) -> SparsityWitness:
    s = frozenset(vertex_set)
    return SparsityWitness(s, G.edges_in_mask(G.mask_of(s)), k * len(s))


def find_k_orientation(G: Graph, k: int) -> Orientation | SparsityWitness:
    """A k-orientation of ``G`` or, failing that, a Hall-derived witness.

    The witness is the endpoint set of the Hall violator; it is a valid
    violation but not necessarily a minimal one.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    edges, adj = _bipartite(G, k)
    hk = HopcroftKarp(adj, len(G.order) * k)
    hk.run()
    if all(m is not None for m in hk.match_left):
        order = G.order
        arcs = []
        for (u, v), r in zip(edges, hk.match_left):
            tail = order[r // k]
            arcs.append((u, v) if tail == u else (v, u))
        return Orientation(G, arcs)
    violator = hk.hall_violator()
    ends = {x for i in violator for x in edges[i]}
    return _witness_for(G, ends, k)


def minimal_sparsity_witness(G: Graph, k: int) -> SparsityWitness | None:
    """Smallest violating set, ties broken lexicographically on sorted labels.

    Exhaustive; subsets are scanned by increasing size then lexicographically.
    """
    n = len(G.order)
    if n > MINIMAL_WITNESS_MAX_VERTICES:
        raise CapExceeded(f"minimal witness search limited to {MINIMAL_WITNESS_MAX_VERTICES} vertices")
    for size in range(1, n + 1):
        for combo in combinations(range(n), size):
            mask = 0
            for i in combo:
                mask |= 1 << i
            e = G.edges_in_mask(mask)
            if e > k * size:
                return SparsityWitness(G.set_of(mask), e, k * size)
    return None


def is_k_sparse(G: Graph, k: int, minimal: bool | None = None) -> SparsityWitness | None:
    """``None`` when every vertex subset S spans at most k|S| edges.

    Otherwise a :class:`SparsityWitness`.  The yes/no answer always comes from
    the matching; with ``minimal`` (default: when ``|V| <= 20``) the witness is
    then replaced by the minimum-size, lexicographically first violator.
    """
    result = find_k_orientation(G, k)
    if isinstance(result, Orientation):
        return None
    if minimal is None:
        minimal = len(G) <= MINIMAL_WITNESS_MAX_VERTICES
    if minimal:
        return minimal_sparsity_witness(G, k)
    return result


def check_orientation(o: Orientation, k: int) -> bool:
    """True iff ``o`` is an orientation of its base with out-degree <= k.

    Raises :class:`OrientationError` when the arcs are not an orientation.
    """
    o.validate()
    return o.max_out_degree() <= k


def orientation_from_bits(G: Graph, bits) -> Orientation:
    """Bit 0 keeps the sorted direction ``(u, v)`` of edge ``u < v``."""
    return Orientation(G, ((u, v) if b == 0 else (v, u) for (u, v), b in zip(G.edge_list, bits)))


def enumerate_k_orientations(G: Graph, k: int, cap: int = DEFAULT_ORIENTATION_CAP) -> list[Orientation]:
    """All k-orientations, ordered lexicographically by direction bits over
    the sorted edge list."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    edges = G.edge_list
    if len(edges) > cap:
        raise CapExceeded(f"{len(edges)} edges exceeds the enumeration cap of {cap}")
    idx = G.index
    out = [0] * len(G.order)
    bits: list[int] = []
    results: list[Orientation] = []

    def extend(i: int) -> None:
        if i == len(edges):
            results.append(orientation_from_bits(G, bits))
            return
        u, v = edges[i]
        for b, tail in ((0, idx[u]), (1, idx[v])):
            if out[tail] < k:
                out[tail] += 1
                bits.append(b)
                extend(i + 1)
                bits.pop()
                out[tail] -= 1

    extend(0)
    return results


def parse_arcs(G: Graph, arcs) -> Orientation:
    """Build an orientation from arcs, rejecting non-edges immediately."""
    o = Orientation(G, arcs)
    for x, y in o.arcs:
        if edge_key(x, y) not in G.edges:
            raise OrientationError(f"arc ({x}, {y}) is not an edge of the base graph")
    return o
