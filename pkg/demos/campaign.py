"""A small seeded campaign, summarised by check."""

# %%
from collections import Counter

from entrobound.harness import CampaignConfig, emit_report, run_campaign

cfg = CampaignConfig(seed=42, trials=25, dims=(2, 3), outcomes=(2, 5),
                     checks=("thm5", "thm6", "cor8", "naimark"))
report = run_campaign(cfg)

# %%
print(Counter(r.check for r in report.rows))
print("all passed:", report.passed)
print(emit_report(report).splitlines()[-1])

# %% rank-one POVMs saturate the pair bound
sat = run_campaign(CampaignConfig(seed=1, trials=20, ensemble="rank-one-POVM", checks=("saturation",)))
print(max(abs(r.lhs - r.rhs) for r in sat.rows))
