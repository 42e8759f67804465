# %% [markdown]
# # Kernels and specialized equilibria
#
# In the public-goods game on a digraph, player i enjoys the effort of its
# out-neighbours.  A profile where everyone either contributes the
# stand-alone optimum e* or nothing is an equilibrium exactly when the
# contributors form a kernel: no arcs among them, and every free-rider has an
# arc into them.

# %%
import numpy as np

from pubgoods import (
    Digraph,
    GameParams,
    enumerate_kernels,
    is_nash,
    payoff,
    sample_gnp,
    specialized_equilibria,
)

params = GameParams()  # c = 1, e* = 1, b(x) = 2 log(1 + x)
print("e* =", params.e_star)

# %% [markdown]
# ## A directed 3-cycle has no kernel
#
# Whoever contributes, the player pointing at them free-rides and the third
# player is left uncovered.  The symmetric interior profile e*/2 is still an
# equilibrium.

# %%
cycle = Digraph.from_edges(3, [(0, 1), (1, 2), (2, 0)])
print("kernels:", enumerate_kernels(cycle).kernels)
print("specialized equilibria:", specialized_equilibria(cycle, params))
print("interior profile is Nash:", is_nash(cycle, params, [0.5, 0.5, 0.5]))

# %% [markdown]
# ## Mutual links give a choice
#
# With a reciprocal pair either player can carry the load.

# %%
pair = Digraph.from_edges(2, [(0, 1), (1, 0)])
for e in specialized_equilibria(pair, params):
    print(e, "payoffs:", [round(float(payoff(pair, params, e, i)), 4) for i in range(2)])

# %% [markdown]
# ## One-way flows pin down the outcome
#
# Node 2 has no out-neighbour, so it must provide for itself; 0 and 1 then
# free-ride on it.

# %%
dag = Digraph.from_edges(3, [(0, 2), (1, 2)])
print(specialized_equilibria(dag, params))

# %% [markdown]
# ## Counting kernels on a random graph
#
# The search reports whether it was exhaustive; with a tiny budget the list
# is partial and says so.

# %%
rng = np.random.default_rng(1)
g = sample_gnp(24, 0.3, rng)
full = enumerate_kernels(g)
partial = enumerate_kernels(g, budget=5)
print(f"{full.count} kernels (exhaustive={full.exhaustive})")
print(f"{partial.count} found with budget 5 (exhaustive={partial.exhaustive})")
