# %% [markdown]
# # How many levels does each mode actually use?
#
# The linear entropy is normalized by the number of levels d a subsystem
# explores.  Here d is read off the trajectory: the smallest level count
# holding all but 1e-9 of the population at every sample.

# %%
from ioncavity import Grid, SweepConfig, run_sweep

coarse = dict(theta=Grid(0, 180, 13), T=Grid(0, 180, 61))

# %%
for tier, family in [("block", "i"), ("block", "ii"), ("block", "iii"), ("ld", "i"), ("ld", "iii")]:
    res = run_sweep(SweepConfig(tier=tier, family=family, **coarse))
    print(f"{tier:>5} family {family:<3} d = {res.effective_d}")
