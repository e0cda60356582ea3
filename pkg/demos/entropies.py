"""Rényi entropies of a biased coin across the order range."""

# %%
import math

from entrobound import conjugate_order, min_entropy, renyi_entropy, shannon_entropy

c2 = math.cos(math.pi / 8) ** 2
p = [c2, 1 - c2]

# %% entropy falls as the order grows
for a in (0.25, 0.5, 0.75, 1, 1.5, 2, 5, 64, "min"):
    print(f"H_{a!s:<5} = {renyi_entropy(p, a):.6f}")

# %% the order-1 and infinite-order limits
print("shannon", shannon_entropy(p), "vs alpha=1+1e-7", renyi_entropy(p, 1 + 1e-7))
print("min    ", min_entropy(p), "vs alpha=1e6", renyi_entropy(p, 1e6))

# %% conjugate pairs with 1/a + 1/b = 2
for a in (0.6, 0.75, 1, 1.5, 2, 5):
    print(a, "->", round(conjugate_order(a), 6))
