"""Automorphisms, isomorphism and canonical forms for small graphs.

All three use the same backtracking: vertices are coloured by iterated
degree refinement, and candidate images are restricted to vertices of the
same colour.  The refinement is label-independent, so the colour classes (and
the canonical code built on them) are isomorphism invariants.
"""

from __future__ import annotations

from itertools import permutations, product

from .errors import CapExceeded
from .graph import Graph

__all__ = [
    "automorphisms",
    "refined_colours",
    "canonical_form",
    "canonical_code",
    "find_isomorphism",
    "are_isomorphic",
]

DEFAULT_AUTOMORPHISM_CAP = 12


def refined_colours(G: Graph) -> list[int]:
    """Stable colouring by index; colour ids are assigned from sorted
    signatures, so equal colourings arise for isomorphic graphs."""
    n = len(G.order)
    adj = G.adjacency
    nbrs = [[j for j in range(n) if adj[i] >> j & 1] for i in range(n)]
    colour = [0] * n
    while True:
        sigs = [(colour[i], tuple(sorted(colour[j] for j in nbrs[i]))) for i in range(n)]
        table = {s: c for c, s in enumerate(sorted(set(sigs)))}
        new = [table[s] for s in sigs]
        if len(table) == len(set(colour)):
            return new
        colour = new


def _search(G: Graph, H: Graph, colours_g, colours_h, first_only: bool):
    """Yield bijections index(G) -> index(H) preserving adjacency and colours.

    G vertices are processed in index order, images tried in index order, so
    the output order is lexicographic in the image tuple.
    """
    n = len(G.order)
    ag, ah = G.adjacency, H.adjacency
    image = [-1] * n
    used = [False] * n
    cells: dict[int, list[int]] = {}
    for j, c in enumerate(colours_h):
        cells.setdefault(c, []).append(j)

    def place(i):
        if i == n:
            yield tuple(image)
            return
        for j in cells.get(colours_g[i], ()):
            if used[j]:
                continue
            ok = True
            for p in range(i):
                if (ag[i] >> p & 1) != (ah[j] >> image[p] & 1):
                    ok = False
                    break
            if not ok:
                continue
            image[i] = j
            used[j] = True
            yield from place(i + 1)
            used[j] = False
            image[i] = -1

    yield from place(0)


def automorphisms(G: Graph, cap: int = DEFAULT_AUTOMORPHISM_CAP) -> list[dict[str, str]]:
    """Every edge-preserving permutation of ``G`` as a ``{v: g(v)}`` dict.

    Ordered lexicographically by the image tuple over sorted vertices; the
    identity always comes first.
    """
    if len(G) > cap:
        raise CapExceeded(f"{len(G)} vertices exceeds the automorphism cap of {cap}")
    col = refined_colours(G)
    order = G.order
    return [
        {order[i]: order[j] for i, j in enumerate(img)}
        for img in _search(G, G, col, col, first_only=False)
    ]


def find_isomorphism(G: Graph, H: Graph) -> dict[str, str] | None:
    if len(G) != len(H) or G.num_edges != H.num_edges:
        return None
    cg, ch = refined_colours(G), refined_colours(H)
    if sorted(cg) != sorted(ch):
        return None
    for img in _search(G, H, cg, ch, first_only=True):
        return {G.order[i]: H.order[j] for i, j in enumerate(img)}
    return None


def are_isomorphic(G: Graph, H: Graph) -> bool:
    return find_isomorphism(G, H) is not None


def canonical_code(G: Graph) -> tuple:
    """An isomorphism-complete invariant: (n, colour multiset, adjacency
    bits) minimised over all colour-respecting orderings."""
    code, _ = _canonical(G)
    return code


def _canonical(G: Graph):
    n = len(G.order)
    col = refined_colours(G)
    adj = G.adjacency
    groups: dict[int, list[int]] = {}
    for i, c in enumerate(col):
        groups.setdefault(c, []).append(i)
    keys = sorted(groups)
    best = None
    best_order = None
    for parts in product(*(permutations(groups[c]) for c in keys)):
        seq = [i for part in parts for i in part]
        pos = {v: p for p, v in enumerate(seq)}
        bits = tuple(
            sorted((min(pos[i], pos[j]), max(pos[i], pos[j])) for i in range(n) for j in range(i + 1, n) if adj[i] >> j & 1)
        )
        if best is None or bits < best:
            best, best_order = bits, seq
    colour_profile = tuple(col[i] for i in (best_order or []))
    return (n, colour_profile, best or ()), best_order or []


def canonical_form(G: Graph, prefix: str = "v") -> tuple[Graph, dict[str, str]]:
    """The canonical representative of ``G``'s isomorphism class with
    vertices ``prefix0 .. prefix{n-1}``, plus the relabelling used."""
    _, seq = _canonical(G)
    mapping = {G.order[i]: f"{prefix}{p}" for p, i in enumerate(seq)}
    return G.relabel(mapping), mapping
