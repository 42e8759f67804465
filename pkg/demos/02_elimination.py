# %% [markdown]
# # Peeling a graph down to its core
#
# Players with no out-neighbours must contribute; anyone pointing at them can
# free-ride; players nobody points at (once those are gone) simply react to
# the rest.  Repeating this leaves a residual graph whose equilibria lift one
# for one to the original.

# %%
from pathlib import Path

from pubgoods import GameParams, eliminate, enumerate_kernels, lift_equilibrium, parse_digraph
from pubgoods.game import specialized_equilibria

HERE = Path(__file__).resolve().parent
g = parse_digraph((HERE / "graphs" / "core_pair8.edges").read_text())
params = GameParams()
print(g.n, "players,", g.num_arcs(), "arcs")

# %%
trace = eliminate(g)
for k, r in enumerate(trace.rounds, 1):
    print(f"round {k}: must contribute {r.I}, free-ride {r.I_prime}, unconstrained {r.I_dprime}")
print("residual players:", trace.residual_labels)
print("residual arcs:", trace.residual.edges())

# %% [markdown]
# The residual is a reciprocal pair, which has two equilibria.  Each lifts to
# a full profile in which the peeled players take their forced roles.

# %%
for e in specialized_equilibria(trace.residual, params):
    print(e, "->", lift_equilibrium(trace, e, params))

print("kernel counts agree:", enumerate_kernels(g).count == enumerate_kernels(trace.residual).count)

# %% [markdown]
# An acyclic graph peels away entirely, leaving a single equilibrium.

# %%
dag = parse_digraph((HERE / "graphs" / "dag.edges").read_text())
t = eliminate(dag)
print("residual empty:", t.residual_empty, "profile:", lift_equilibrium(t, [], params))
