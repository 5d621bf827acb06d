"""
Uniform sampling and Monte Carlo
================================

Put ``n + 1`` spots on a circle, let ``m`` cars park with wrap-around, then
rotate so a randomly chosen empty spot sits at the end.  The result is a
uniform parking function.
"""

# %%
from collections import Counter

import numpy as np

from parking import sample_pf_batch

rng = np.random.default_rng(1)
draws = sample_pf_batch(2, 2, 60_000, rng)
print(Counter(map(tuple, draws.tolist())))  # three outcomes, about 20000 each

# %%
# Large cases are fast because the batch sampler is vectorised.
import time

t0 = time.perf_counter()
big = sample_pf_batch(500, 1000, 100_000, rng)
print(f"{len(big) / (time.perf_counter() - t0):,.0f} samples per second")

# %%
# Estimates with standard errors, reproducible from (seed, threads).
from parking import SampleConfig, exact_moment_coord, mc_report

cfg = SampleConfig(m=100, n=200, count=100_000, seed=7, threads=2)
for est in mc_report(cfg, ["pi1", "tau2", "k1", "var(k1)", "cov(pi1,pi2)"]):
    print(f"{est.name:14s} {est.mean:10.4f} +- {est.std_error:.4f} {est.note}")
print("exact E(pi1):", float(exact_moment_coord(1, 100, 200)))
