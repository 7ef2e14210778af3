"""
Single-channel topologies and the middle WLAN
=============================================

Three WLANs on one channel, spaced further apart in each topology.  In T2
the middle WLAN hears both neighbours, which never hear each other, and
almost never transmits.  In T3 neither neighbour alone is loud enough, but
their summed power still freezes the middle WLAN's backoff.
"""
from dcbctmn import evaluate, load_fixture

for name in ("scenario_III_T1", "scenario_III_T2", "scenario_III_T3",
             "scenario_III_T3_noCE", "scenario_III_T4"):
    r = evaluate(load_fixture(name))
    print(f"{name:22s} |S|={r.n_states}  " +
          "  ".join(f"{w.name}: {w.throughput_mbps:6.2f} Mbps ({w.airtime:.3f})" for w in r.wlans))

###############################################################################
# In T3 without capture margin, B is on air more often than in T3 but its
# frames only survive when at most one neighbour transmits.
r = evaluate(load_fixture("scenario_III_T3_noCE"))
for state, ok in r["B"].sinr_ok.items():
    print(f"  {state:24s} decodable: {ok:.0%}")
