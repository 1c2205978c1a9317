# %% [markdown]
# # The control function
#
# F is piecewise linear through (0, 0), (1, 2), (2, 3) and logarithmic after
# that.  Values come with certified rational bounds, and comparisons of an
# integer predimension against F(n) are decided exactly.

# %%
from hrushovski import eval_bounds, inverse_bound, reference_F, validate_control_function
from hrushovski.control import compare_exact, required_delta

F = reference_F()

# %%
for n in (1, 2, 3, 6, 115, 116):
    iv = eval_bounds(F, n, precision_bits=80)
    print(f"F({n}) in [{float(iv.lo):.10f}, {float(iv.hi):.10f}]")

# %% [markdown]
# Exact comparison: -1 means delta < F(n), 0 equality, 1 delta > F(n).

# %%
print(compare_exact(3, 2, F), compare_exact(4, 6, F), compare_exact(4, 116, F))

# %% [markdown]
# The least integer predimension a set of n vertices needs, and the largest
# set size that predimension 4 can afford.

# %%
print([required_delta(F, n) for n in range(1, 8)])
print("inverse_bound(4) =", inverse_bound(F, 4))

# %%
report = validate_control_function(F, horizon=1000)
for check in report.checks:
    print("ok " if check.passed else "BAD", check.name)
