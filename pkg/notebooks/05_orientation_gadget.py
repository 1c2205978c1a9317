# %% [markdown]
# # Encoding an orientation in a graph
#
# Each arc a -> b becomes a small gadget hanging off a head vertex c: a
# 4-cycle l1 l2 l3 l4 with l1 joined to c, a joined to l2 and l4, and b joined
# to l3.  A first-order pattern at c reads the arcs back.

# %%
from hrushovski import Graph, build_gadget, detect_labels, enumerate_k_orientations, verify_gadget

A = Graph.from_edges([("p", "q"), ("q", "r"), ("r", "s")])
tau = enumerate_k_orientations(A, 2)[0]
g = build_gadget(A, tau, head_name="c")
print(len(g.graph), g.graph.num_edges)
print(sorted(tau.arcs))
print(sorted(detect_labels(g, "c")))

# %% [markdown]
# Deleting any edge of a label destroys it.

# %%
arc = sorted(g.labels)[0]
u, v = g.label_edges(arc)[0]
print(arc in detect_labels(g.graph.remove_edge(u, v), "c"))

# %% [markdown]
# The single-edge case, with its predimension and closure tables.

# %%
report = verify_gadget(Graph.from_edges([("a", "b")]), [("a", "b")])
print(report.overall)
print(report.rendered()["closure"])
