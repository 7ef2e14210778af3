"""
Mixing policies on a line of three WLANs
========================================

A and C both sense B but not each other.  Always grabbing the widest free
channel maximises total throughput but starves B; letting some WLANs pick
at random trades throughput for fairness.
"""
from dcbctmn import evaluate, load_fixture, policy_combinations

base = load_fixture("scenario_IV")
rows = []
for cfg in policy_combinations(base, ("AM", "PU")):
    r = evaluate(cfg)
    rows.append((cfg.policy_label(), r))

print("policies   |S|   G_A     G_B     G_C     total   Jain    prop.fair")
for label, r in sorted(rows, key=lambda x: -x[1].throughput_mbps):
    g = [w.throughput_mbps for w in r.wlans]
    print(f"{label:9s} {r.n_states:4d} " + " ".join(f"{v:7.2f}" for v in g) +
          f" {r.throughput_mbps:7.2f} {r.jain:.4f} {r.proportional:.4f}")
