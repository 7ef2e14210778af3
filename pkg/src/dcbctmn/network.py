"""WLAN description and setup-time link profiling (MCS and departure rates)."""
import logging
import math
from dataclasses import dataclass, field


from . import phy as _phy
from .channels import ConfigurationError, candidate_tx_channels
from .policies import Policy
from .propagation import received_power_map, mw_to_dbm, distance

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Wlan:
    """One AP with its STAs, channel allocation and DCB policy."""

    name: str
    ap: tuple
    stas: tuple
    allocation: object
    policy: Policy = Policy.AM

    def __post_init__(self):
        object.__setattr__(self, "ap", tuple(float(v) for v in self.ap))
        object.__setattr__(self, "stas", tuple(tuple(float(v) for v in s) for s in self.stas))
        object.__setattr__(self, "policy", Policy.parse(self.policy))
        if not self.stas:
            raise ConfigurationError(f"WLAN {self.name!r} needs at least one STA")
        for p in (self.ap, *self.stas):
            if not all(math.isfinite(v) for v in p):
                raise ConfigurationError(f"WLAN {self.name!r} has a non-finite coordinate")
        for s in self.stas:
            distance(self.ap, s)

    def with_policy(self, policy):
        return Wlan(self.name, self.ap, self.stas, self.allocation, policy)


@dataclass
class LinkProfile:
    """Per-width MCS and departure rate of a WLAN, fixed before the analysis.

    With several STAs the AP uses, for each width, the highest MCS every STA
    can decode.  Widths where no MCS is sustainable keep MCS 0 timing for the
    departure rate but never count as successful transmissions.
    """

    mcs: dict = field(default_factory=dict)
    mu: dict = field(default_factory=dict)
    rx_power_dbm: dict = field(default_factory=dict)
    failed_widths: frozenset = frozenset()
    reachable: bool = True
    diagnostics: list = field(default_factory=list)

    def usable(self, width):
        return self.reachable and width not in self.failed_widths


def isolated_rx_power_dbm(wlan, channel, radio, n_sys, sta):
    band = slice(channel.lo - 1, channel.hi)
    p = received_power_map(wlan.ap, wlan.stas[sta], channel, radio, n_sys)[band].sum()
    return float(mw_to_dbm(p))


def profile_link(wlan, scheme, radio, phy=_phy.PhyParams(), table=_phy.DEFAULT_MCS_TABLE):
    prof = LinkProfile()
    failed = set()
    n_sys = scheme.n_sys
    for ch in candidate_tx_channels(wlan.allocation, scheme):
        w = ch.width
        p = min(isolated_rx_power_dbm(wlan, ch, radio, n_sys, k) for k in range(len(wlan.stas)))
        prof.rx_power_dbm[w] = p
        try:
            mcs = _phy.select_mcs(p, w, table)
        except _phy.LinkBudgetError as exc:
            failed.add(w)
            mcs = min(table, key=lambda e: e.index)
            prof.diagnostics.append(f"WLAN {wlan.name}: {exc}")
        prof.mcs[w] = mcs
        prof.mu[w] = _phy.departure_rate(mcs, w, phy)
    prof.failed_widths = frozenset(failed)
    primary_power = prof.rx_power_dbm[1]
    if primary_power < radio.cca_dbm:
        prof.reachable = False
        prof.diagnostics.append(
            f"WLAN {wlan.name}: isolated received power {primary_power:.2f} dBm is below "
            f"CCA {radio.cca_dbm} dBm; throughput forced to zero")
    for msg in prof.diagnostics:
        log.warning(msg)
    return prof
