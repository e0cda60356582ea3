"""Dilating a three-outcome qubit POVM to a projective measurement on C^6."""

# %%
import numpy as np

from entrobound import dilate, outcome_distribution, verify_dilation
from entrobound.harness import builtin_discrimination_scenario
from entrobound.naimark import embed_state, extend_companion

sc = builtin_discrimination_scenario()
M, N = sc.measurements["M"], sc.measurements["N"]
psi = sc.states["psi2"]

dil = dilate(M)
print("enlarged dimension:", dil.enlarged_dim)

# %% projectors reproduce the outcome statistics
big = embed_state(psi, dil)
print(np.round(outcome_distribution(dil.projectors, big), 6))
print(np.round(outcome_distribution(M, psi), 6))
print(np.round(outcome_distribution(extend_companion(N, dil), big), 6))

# %% structural and per-state residuals
rep = verify_dilation(dil, N, [sc.states[k] for k in ("psi1", "psi2", "phi3")])
for k, v in rep.residuals().items():
    print(f"{k:>24}: {v:.1e}")

# %% the element-applied norms do not carry over
print("norm gaps per state:", [np.round(g, 4).tolist() for g in rep.norm_gaps])
