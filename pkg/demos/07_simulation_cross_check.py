"""
Cross-checking the solver with a simulated trajectory
=====================================================

A Gillespie run of the same chain gives time-averaged occupancies that
should sit within a few standard errors of the stationary distribution.
"""
import numpy as np

from dcbctmn import explore, gillespie_sample, load_fixture, occupancy_stderr, solve_equilibrium

cfg = load_fixture("scenario_III_T3")
ctmn = explore(cfg.wlans, cfg.scheme, cfg.radio, cfg.phy)
pi = solve_equilibrium(ctmn.Q).pi
occ = gillespie_sample(ctmn, horizon=100.0, seed=1)
se = occupancy_stderr(ctmn.Q, pi, 100.0)

print("state                     pi        simulated  z")
for k in np.argsort(-pi):
    print(f"{ctmn.label(k):24s} {pi[k]:.6f}  {occ[k]:.6f}  {(occ[k] - pi[k]) / se[k]:+.2f}")
