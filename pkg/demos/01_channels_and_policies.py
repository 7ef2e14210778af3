"""
Channels, allocations and bonding policies
==========================================

A band of basic 20 MHz channels is split into aligned power-of-two blocks.
Each WLAN owns one block and a primary channel inside it, and its policy
decides which block to transmit on given the channels it senses free.
"""
from dcbctmn import Allocation, Channel, ChannelizationScheme, Policy, enumerate_valid_channels, select
from dcbctmn.channels import candidate_tx_channels

###############################################################################
# Eight basic channels give 15 valid transmission channels.
for ch in enumerate_valid_channels(8):
    print(f"{str(ch):8s} {ch.bandwidth_mhz:4d} MHz")

###############################################################################
# A WLAN allocated channels 1-4 with primary 2 may use three blocks.
scheme = ChannelizationScheme(4)
alloc = Allocation(Channel(1, 4), 2)
print("candidates:", [str(c) for c in candidate_tx_channels(alloc, scheme)])

###############################################################################
# With channels 3 and 4 busy, each policy reacts differently.
for free in ({1, 2, 3, 4}, {1, 2}, {2}, {1, 3, 4}):
    print(f"free={sorted(free)}")
    for policy in Policy:
        choice = select(policy, alloc, frozenset(free), scheme)
        opts = ", ".join(f"{c} p={a}" for c, a in choice) or "wait"
        print(f"  {policy.value:3s} {opts}")
