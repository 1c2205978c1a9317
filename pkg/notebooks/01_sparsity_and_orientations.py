# %% [markdown]
# # Sparsity and orientations
#
# A graph is k-sparse when no vertex set S spans more than k|S| edges.  That is
# the same as having an orientation with every out-degree at most k, and a
# bipartite matching decides it.  When no orientation exists the matching
# leaves behind a set that spans too many edges.

# %%
from hrushovski import Graph, Orientation, enumerate_k_orientations, find_k_orientation, is_k_sparse
from itertools import combinations

# %% [markdown]
# Predimension 2|A| - e(A) of a 4-cycle and of its subsets.

# %%
c4 = Graph.from_edges([("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
print("delta(C4) =", c4.delta())
print("delta({a, b}) =", c4.delta({"a", "b"}))

# %% [markdown]
# K5 has 10 edges on 5 vertices, so it is 2-orientable.  K6 has 15 edges on
# 6 vertices and is not.

# %%
k5 = Graph.from_edges(combinations("abcde", 2))
k6 = Graph.from_edges(combinations("abcdef", 2))
o = find_k_orientation(k5, 2)
print(type(o).__name__, sorted(o.arcs))
print("max out-degree:", o.max_out_degree())

w = find_k_orientation(k6, 2)
print(type(w).__name__, sorted(w.violating_set), w.edge_count, ">", w.bound)

# %% [markdown]
# Counting orientations.  A path on three vertices has three orientations
# with out-degree at most one; the 4-cycle has two.

# %%
path = Graph.from_edges([("a", "b"), ("b", "c")])
print(len(enumerate_k_orientations(path, 1)), len(enumerate_k_orientations(c4, 1)))
print(is_k_sparse(k6, 2, minimal=True))
assert isinstance(o, Orientation)
