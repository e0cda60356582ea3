"""The interpolation inequality on random contractions."""

# %%
import math

import numpy as np

from entrobound import riesz_check
from entrobound.harness.ensembles import complex_gaussian, make_rng, random_contraction

# %% equality case
r = riesz_check([[1 / math.sqrt(2), 1 / math.sqrt(2)]], [1, 1], 4 / 3)
print(r.lhs, r.rhs)

# %% slack distribution over random draws
rng = make_rng(7)
slack = []
for _ in range(300):
    t = random_contraction(rng, int(rng.integers(1, 5)), 4)
    slack.append(riesz_check(t, complex_gaussian(rng, 4), rng.uniform(1.01, 1.99)).slack)
print(f"min {min(slack):.3e}  median {np.median(slack):.3e}")
