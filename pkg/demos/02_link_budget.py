"""
From distance to departure rate
===============================

Received power sets the MCS, the MCS and width set the A-MPDU duration, and
the full RTS/CTS/DATA/BACK exchange gives the rate at which a transmission
ends.
"""
import numpy as np

from dcbctmn import DEFAULT_MCS_TABLE, path_loss_db
from dcbctmn.phy import (backoff_rate, data_duration_ns, departure_rate, select_mcs,
                         success_duration_ns)
from dcbctmn.propagation import per_channel_tx_power_dbm

###############################################################################
# Dual-slope path loss: the slope steepens past the 9 m breakpoint.
for d in (1, 5, 9, 10, 20, 50):
    print(f"{d:3d} m  {path_loss_db(d):6.2f} dB")

###############################################################################
# MCS picked at each width for a STA at growing distances. Bonding spreads
# the same total power over more channels while the sensitivity relaxes by
# 3 dB per doubling, so wide channels drop out first.
print("dist  " + "  ".join(f"{20 * w:>4d}MHz" for w in (1, 2, 4, 8)))
for d in (1, 5, 10, 15, 20):
    row = []
    for w in (1, 2, 4, 8):
        rx = per_channel_tx_power_dbm(15, w) + 10 * np.log10(w) - path_loss_db(d)
        try:
            row.append(f"{select_mcs(rx, w).index:7d}")
        except ValueError:
            row.append("      -")
    print(f"{d:4d}  " + "  ".join(row))

###############################################################################
# Frame timing with MCS 11.
mcs11 = DEFAULT_MCS_TABLE[-1]
for w in (1, 2, 4, 8):
    print(f"{20 * w:3d} MHz  T_data={data_duration_ns(mcs11, w) / 1e3:7.0f} us  "
          f"T_suc={success_duration_ns(mcs11, w) / 1e3:7.0f} us  "
          f"mu={departure_rate(mcs11, w):7.2f} 1/s")
print(f"backoff rate lambda = {backoff_rate():.1f} 1/s")
