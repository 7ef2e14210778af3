"""Link budget: path loss, per-channel power, CCA sensing and SINR.

Power maps are numpy arrays indexed by ``basic_channel - 1``.  Emitted maps are
in dBm (``-inf`` where nothing is radiated); received maps are linear mW so that
contributions from several transmitters can simply be added.
"""
import math
from dataclasses import dataclass

import numpy as np

from .channels import ConfigurationError, is_power_of_two


class LinkError(ValueError):
    """Raised for degenerate geometry (e.g. coincident nodes)."""


@dataclass(frozen=True)
class RadioConfig:
    """Radio and channel-model parameters shared by every node.

    ``adjacent_leakage_db`` is the attenuation, relative to the in-band
    per-channel power, of the copy radiated into each basic channel contiguous
    to the transmission channel.  ``None`` disables adjacent-channel leakage.
    """

    tx_power_dbm: float = 15.0
    tx_gain_db: float = 0.0
    rx_gain_db: float = 0.0
    cca_dbm: float = -82.0
    capture_effect_db: float = 20.0
    noise_dbm: float = -95.0
    bonding_loss_db: float = 3.0
    break_distance_m: float = 9.0
    adjacent_leakage_db: float | None = 3.0
    central_frequency_ghz: float = 5.0

    def __post_init__(self):
        if not self.cca_dbm > self.noise_dbm:
            raise ConfigurationError("cca_dbm must be above noise_dbm")
        if not self.capture_effect_db > 0:
            raise ConfigurationError("capture_effect_db must be positive")
        if self.bonding_loss_db < 0:
            raise ConfigurationError("bonding_loss_db must be non-negative")
        if self.break_distance_m <= 0:
            raise ConfigurationError("break_distance_m must be positive")
        if self.adjacent_leakage_db is not None and self.adjacent_leakage_db < 0:
            raise ConfigurationError("adjacent_leakage_db must be non-negative or None")


def dbm_to_mw(p_dbm):
    return np.power(10.0, np.asarray(p_dbm, dtype=float) / 10.0)


def mw_to_dbm(p_mw):
    with np.errstate(divide="ignore"):
        return 10.0 * np.log10(np.asarray(p_mw, dtype=float))


def distance(a, b):
    d = math.dist(a, b)
    if d <= 0:
        raise LinkError(f"coincident positions {tuple(a)} and {tuple(b)}")
    return d


def path_loss_db(d, break_distance_m=9.0):
    """Dual-slope log-distance path loss for 5 GHz indoor links.

    ``53.2 + 25.8 log10(d)`` up to the break distance, ``56.4 + 29.1 log10(d)``
    beyond it.  The model jumps by about +4.3 dB at the default 9 m break point.
    """
    if not d > 0:
        raise LinkError(f"path loss needs a positive distance, got {d!r}")
    if d <= break_distance_m:
        return 53.2 + 25.8 * math.log10(d)
    return 56.4 + 29.1 * math.log10(d)


def per_channel_tx_power_dbm(p_tx_dbm, width, loss_db=3.0):
    """Power put on each basic channel of a ``width``-channel transmission."""
    if not is_power_of_two(width):
        raise ConfigurationError(f"width must be a power of two, got {width!r}")
    return p_tx_dbm - loss_db * math.log2(width)


def emitted_power_map(tx_channel, radio, n_sys):
    """Per-basic-channel radiated power in dBm, before path loss.

    In-band channels carry the per-channel transmit power; the basic channel
    just below and just above the block carry a copy attenuated by
    ``radio.adjacent_leakage_db``.  Leakage outside ``[1, n_sys]`` is dropped.
    """
    out = np.full(n_sys, -np.inf)
    p = per_channel_tx_power_dbm(radio.tx_power_dbm, tx_channel.width, radio.bonding_loss_db)
    out[tx_channel.lo - 1:tx_channel.hi] = p
    if radio.adjacent_leakage_db is not None:
        for c in (tx_channel.lo - 1, tx_channel.hi + 1):
            if 1 <= c <= n_sys:
                out[c - 1] = p - radio.adjacent_leakage_db
    return out


def received_power_map(tx, rx, tx_channel, radio, n_sys):
    """Per-basic-channel power (mW) received at ``rx`` from a transmitter at ``tx``."""
    pl = path_loss_db(distance(tx, rx), radio.break_distance_m)
    p_dbm = emitted_power_map(tx_channel, radio, n_sys) - pl + radio.tx_gain_db + radio.rx_gain_db
    return dbm_to_mw(p_dbm)


def sensed_power_map(position, transmissions, radio, n_sys):
    """Cumulative power (mW) per basic channel from ``(tx_position, channel)`` pairs."""
    total = np.zeros(n_sys)
    for tx_pos, ch in transmissions:
        total += received_power_map(tx_pos, position, ch, radio, n_sys)
    return total


def sensed_free_set(wlan, active_transmissions, radio, n_sys):
    """Basic channels of ``wlan``'s allocation whose sensed power is below CCA.

    ``active_transmissions`` holds ``(other_wlan, channel)`` pairs; power is
    summed in linear scale over all of them and evaluated at ``wlan``'s AP.
    """
    sensed = sensed_power_map(wlan.ap, [(w.ap, ch) for w, ch in active_transmissions],
                              radio, n_sys)
    cca_mw = float(dbm_to_mw(radio.cca_dbm))
    return frozenset(c for c in wlan.allocation.channel.basic_channels
                     if sensed[c - 1] < cca_mw)


def noise_mw(radio, width):
    """Background noise over ``width`` basic channels (noise level is per 20 MHz)."""
    return float(dbm_to_mw(radio.noise_dbm)) * width


def sinr_db(wlan, tx_channel, interferers, radio, n_sys, sta=0):
    """SINR at one of ``wlan``'s STAs while its AP sends on ``tx_channel``.

    Signal and interference are both summed over the basic channels of
    ``tx_channel``; ``interferers`` holds ``(other_wlan, channel)`` pairs.
    """
    rx = wlan.stas[sta]
    band = slice(tx_channel.lo - 1, tx_channel.hi)
    signal = received_power_map(wlan.ap, rx, tx_channel, radio, n_sys)[band].sum()
    interference = sensed_power_map(rx, [(w.ap, ch) for w, ch in interferers],
                                    radio, n_sys)[band].sum()
    ratio = signal / (interference + noise_mw(radio, tx_channel.width))
    return float(mw_to_dbm(ratio))
