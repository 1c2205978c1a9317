# %% [markdown]
# # Building finite approximations of the generic structure
#
# Starting from the empty graph, each round glues a copy of every small C_F
# member B over every d-closed base A whose embedding into B is d-closed.
# The result is a chain M_0 <= M_1 <= ... with each step d-closed in the next.

# %%
from collections import Counter

from hrushovski import build_generic_approximation, enumerate_C_F, reference_F, verify_chain

F = reference_F()

# %%
reps = enumerate_C_F(F, 5)
print(Counter(len(g) for g in reps))

# %%
run = build_generic_approximation(F, rounds=3, size_budget=60, pair_size_cap=2, seed=1)
print(run.status, run.rounds_completed, len(run.chain), len(run.final), run.final.num_edges)

# %%
report = verify_chain(run)
print("chain verified:", report.ok, "checks:", len(report.checks))

# %% [markdown]
# Same seed, same chain.

# %%
again = build_generic_approximation(F, rounds=3, size_budget=60, pair_size_cap=2, seed=1)
print(again.to_json() == run.to_json())
