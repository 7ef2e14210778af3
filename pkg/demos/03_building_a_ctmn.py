"""
Building and solving a CTMN
===========================

Two overlapping WLANs: A owns channels 1-4 (primary 2) and B owns 3-4
(primary 3).  States are discovered breadth-first from the idle state, the
balance equations are solved, and throughput follows from the time spent
transmitting.
"""
from dcbctmn import evaluate, explore, load_fixture, solve_equilibrium

cfg = load_fixture("scenario_I")
print(cfg.description)

###############################################################################
# Under AM the chain has five states; A[1,2] alone is only entered when B
# finishes while A is still sending on 1-2.
ctmn = explore(cfg.wlans, cfg.scheme, cfg.radio, cfg.phy)
print(ctmn.dump())

pi = solve_equilibrium(ctmn.Q).pi
for k, p in enumerate(pi):
    print(f"{ctmn.label(k):16s} {p:.5f}")

###############################################################################
# Every policy yields a different chain.
for policy in ("OP", "SCB", "AM", "PU"):
    r = evaluate(cfg.with_policies(policy))
    print(f"{policy:3s} |S|={r.n_states:2d}  " +
          "  ".join(f"{w.name}={w.throughput_mbps:7.2f} Mbps" for w in r.wlans))
