# %% [markdown]
# # Making links mutual
#
# Turning one-way arcs into two-way ones never destroys a specialized
# equilibrium: a kernel stays independent (the new arcs point out of
# free-riders or join two free-riders) and stays dominating (arcs are only
# added).  New equilibria may appear.

# %%
from pubgoods import Digraph, GameParams, enumerate_kernels, orient_from_mis, symmetrize
from pubgoods.digraph import partial_symmetrizations
from pubgoods.reciprocity import counterexample_interior, persistence_matrix

params = GameParams()

# %%
chain = Digraph.from_edges(7, [(i + 1, i) for i in range(6)])
one_mutual = Digraph.from_edges(7, chain.edges() + [(0, 1)])
for name, h in (("chain", chain), ("one mutual link", one_mutual), ("all mutual", symmetrize(chain))):
    print(f"{name:16s} {enumerate_kernels(h).count} kernels")

# %% [markdown]
# Every intermediate graph keeps the chain's unique equilibrium.

# %%
family = partial_symmetrizations(chain)
kernels, table = persistence_matrix(chain, family, params)
print(len(family), "graphs; kernel", kernels[0], "preserved everywhere:", bool(table.all()))

# %% [markdown]
# ## Going the other way
#
# Any maximal independent set of an undirected graph is a kernel of some
# orientation with no mutual arcs: point free-riders at contributors and
# break free-rider ties by label.

# %%
ring = symmetrize(Digraph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)]))
g = orient_from_mis(ring, {0, 2})
print("oriented arcs:", g.edges())
print("kernels of the orientation:", enumerate_kernels(g).kernels)

# %% [markdown]
# ## Interior equilibria are different
#
# The 3-cycle's e*/2 profile is an equilibrium, but once all arcs are mutual
# each player receives e* from neighbours and would rather contribute nothing.

# %%
ce = counterexample_interior(params)
print("Nash on cycle:", ce.is_nash_on_G, "| Nash when mutual:", ce.is_nash_on_sG)
print("best responses when mutual:", ce.best_response_on_sG)
