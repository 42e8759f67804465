# %% [markdown]
# # How often does a random digraph have a kernel?
#
# For G(n, p) with fixed p the probability tends to one as n grows, but not
# monotonically: at p = 1/2 it dips for moderate n before climbing.  Small n
# can be computed exactly; larger n is estimated with Wilson intervals.

# %%
import itertools

import numpy as np

from pubgoods import Digraph, ExperimentConfig, enumerate_kernels, run_existence_experiment


def exact_probability(n):
    """Fraction of all digraphs on n nodes with a kernel (p = 1/2)."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    hits = 0
    for keep in itertools.product((0, 1), repeat=len(pairs)):
        g = Digraph.from_edges(n, [a for a, k in zip(pairs, keep) if k])
        hits += enumerate_kernels(g).count > 0
    return hits / 2 ** len(pairs)


for n in (1, 2, 3, 4):
    print(n, exact_probability(n))

# %%
cfg = ExperimentConfig(n_values=(4, 8, 16, 32, 48), p=0.5, trials=1000, seed=0)
res = run_existence_experiment(cfg)
print(res.to_csv())

# %% [markdown]
# The n = 16 estimate sits below the exact n = 4 value; by n = 48 the
# frequency is clearly higher.

# %%
for r in res.records:
    lo, hi = r.wilson_interval
    bar = "#" * int(np.round(40 * r.frequency))
    print(f"n={r.n:3d} {r.frequency:.3f} [{lo:.3f}, {hi:.3f}] {bar}")
