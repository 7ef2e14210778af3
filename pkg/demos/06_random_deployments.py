"""
Random deployments and AM versus PU
===================================

Draw seeded deployments, evaluate each under every WLAN using AM and then
PU, and count where one beats the other by more than 0.5 Mbps.
"""
from dcbctmn import SweepSpec, compare_policies, sweep, write_csv

spec = SweepSpec(deployment={"map_width_m": 40.0, "map_height_m": 40.0},
                 n_wlans=(2, 4, 6), seeds=tuple(range(10)), policies=("AM", "PU"))
rows = sweep(spec)
print(write_csv([r for r in rows if r["row"] == "aggregate"][:6]))

counts = compare_policies(rows)
print("aggregate throughput:", counts)
