# %% [markdown]
# # d-closed sets and the closure operator
#
# A subset A is d-closed when every proper superset has strictly larger
# predimension.  The closure of A is the largest superset of minimal
# predimension.  Two routes compute it: a max-flow reduction and an
# exhaustive search that can be pruned by the size bound F^-1(2|A|).

# %%
from hrushovski import Graph, d_closure, in_C_F, is_d_closed, reference_F
from hrushovski.predim import closure_bound

F = reference_F()

# %% [markdown]
# In a 4-cycle with a pendant vertex, two opposite corners are not closed:
# adding a common neighbour keeps the predimension at 4.

# %%
G = Graph.from_edges([("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("d", "e")])
print(in_C_F(G, F).ok)
print(is_d_closed(G, {"a", "c"}))
cert = d_closure(G, {"a", "c"})
print(sorted(cert.closure), cert.seed_delta, cert.closure_delta)

# %%
for step in cert.to_dict()["steps"]:
    print(step)

# %% [markdown]
# The pruned and flow routes agree.

# %%
bound = closure_bound(F, 2)
print("bound", bound)
print(d_closure(G, {"a", "c"}, bound=bound, method="exhaustive").closure == d_closure(G, {"a", "c"}, method="flow").closure)
