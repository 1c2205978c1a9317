"""Minimum predimension over supersets, as a maximum-weight closure problem.

Maximising ``e(X) - 2|X \\ S|`` over ``S <= X <= W`` is a closure problem:
edge items (+1) require both endpoints, vertex items cost 2 (seed vertices are
free).  A minimum s-t cut solves it, and the nodes that cannot reach the sink
in the residual network form the *largest* optimal closure, which is the union
of all minimisers of delta.
"""

from __future__ import annotations

from collections import deque

import networkx as nx
from networkx.algorithms.flow import preflow_push

from .graph import Graph, iter_bits

__all__ = ["min_delta_superset"]


def min_delta_superset(G: Graph, seed_mask: int, within_mask: int | None = None) -> tuple[int, int]:
    """(min delta(X), union of minimisers) over ``seed <= X <= within``."""
    within = G.full_mask if within_mask is None else within_mask
    if seed_mask & ~within:
        raise ValueError("seed must lie inside the search region")
    adj = G.adjacency
    net = nx.DiGraph()
    net.add_node("s")
    net.add_node("t")
    for i in iter_bits(within):
        if not seed_mask >> i & 1:
            net.add_edge(("v", i), "t", capacity=2)
        for j in iter_bits(adj[i] & within):
            if j > i:
                e = ("e", i, j)
                net.add_edge("s", e, capacity=1)
                net.add_edge(e, ("v", i))
                net.add_edge(e, ("v", j))
    if net.number_of_edges() == 0:
        return G.delta_mask(seed_mask), seed_mask
    res = preflow_push(net, "s", "t")
    reaches_sink = {"t"}
    queue = deque(["t"])
    while queue:
        v = queue.popleft()
        for u in res.pred[v]:
            if u in reaches_sink:
                continue
            attr = res[u][v]
            if attr["capacity"] - attr["flow"] > 0:
                reaches_sink.add(u)
                queue.append(u)
    mask = seed_mask
    for i in iter_bits(within):
        if ("v", i) in res and ("v", i) not in reaches_sink:
            mask |= 1 << i
    return G.delta_mask(mask), mask
