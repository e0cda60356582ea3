"""Unambiguous versus minimum-error discrimination of two qubit states."""

# %%
import math

import numpy as np

from entrobound import (
    check_free_order_bound,
    check_pair_bound,
    check_single_bound,
    compare_bounds,
    f_bar,
    outcome_distribution,
    phi,
    phi_bar,
)
from entrobound.harness import builtin_discrimination_scenario

sc = builtin_discrimination_scenario()
M, N = sc.measurements["M"], sc.measurements["N"]
psi1, phi3 = sc.states["psi1"], sc.states["phi3"]

# %% the three-outcome POVM and the two-outcome projective measurement
for i, e in enumerate(M.elements, 1):
    print(f"M{i} =\n{np.round(e, 4)}")
print("p(M|psi1) =", np.round(outcome_distribution(M, psi1), 4))
print("p(N|psi1) =", np.round(outcome_distribution(N, psi1), 4))

# %% pair bound: state-independent overlap
print("f_bar^2 =", f_bar(M, N) ** 2)
rep = check_pair_bound(M, N, psi1, 2)
for q in rep.inequalities:
    print(f"{q.name:>14}  lhs={q.lhs:.6f}  rhs={q.rhs:.6f}  slack={q.slack:+.2e}")

# %% state-dependent single bounds can beat it, or lose to it
for name, st in (("psi1", psi1), ("phi3", phi3)):
    cor8 = check_free_order_bound(M, N, st, "min", 1)["Cor8"].rhs
    print(f"{name}: phi(M)={phi(M, st):.6f} phi(N)={phi(N, st):.6f} "
          f"summed bound={cor8:.6f} gap={compare_bounds(M, N, st):+.6f}")
print("ln(sqrt2+1) - ln2 =", math.log(math.sqrt(2) + 1) - math.log(2))

# %% high orders approach the min-entropy bound
print("-ln phi_bar(M) =", -math.log(phi_bar(M)))
for a in (2, 8, 64):
    print(a, check_single_bound(M, phi3, a)["Cor9"].lhs)
