"""11ax MCS table, data rates, packet durations and CTMN rate constants.

Durations are computed as exact integer nanoseconds; bits per OFDM symbol are
kept as :class:`fractions.Fraction` so the symbol-count ceilings are exact.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .channels import ConfigurationError

log = logging.getLogger(__name__)

# Data subcarriers per bandwidth, keyed by width in basic channels.
SUBCARRIERS = {1: 234, 2: 468, 4: 980, 8: 1960}

WIDTHS = (1, 2, 4, 8)


class LinkBudgetError(ValueError):
    """No MCS can be sustained by the received power of a link."""


@dataclass(frozen=True)
class McsEntry:
    index: int
    modulation_bits: int
    coding_rate: Fraction
    sensitivity_dbm: dict = field(compare=False)

    def min_sensitivity(self, width):
        try:
            return self.sensitivity_dbm[width]
        except KeyError:
            raise ConfigurationError(f"MCS {self.index} has no sensitivity for width {width}")


def _mcs(index, bits, rate, s20):
    # Sensitivity relaxes by 3 dB per bandwidth doubling.
    return McsEntry(index, bits, Fraction(rate),
                    {1: s20, 2: s20 + 3, 4: s20 + 6, 8: s20 + 9})


# 802.11ax HE-SU receiver minimum input sensitivity (one spatial stream).
DEFAULT_MCS_TABLE = (
    _mcs(0, 1, "1/2", -82),
    _mcs(1, 2, "1/2", -79),
    _mcs(2, 2, "3/4", -77),
    _mcs(3, 4, "1/2", -74),
    _mcs(4, 4, "3/4", -70),
    _mcs(5, 6, "2/3", -66),
    _mcs(6, 6, "3/4", -65),
    _mcs(7, 6, "5/6", -64),
    _mcs(8, 8, "3/4", -59),
    _mcs(9, 8, "5/6", -57),
    _mcs(10, 10, "3/4", -54),
    _mcs(11, 10, "5/6", -52),
)


def load_mcs_table(path):
    """Read an MCS table from a whitespace-separated text file.

    One row per MCS: ``index bits coding_rate s20 s40 s80 s160`` where the
    coding rate is a fraction such as ``5/6`` and the sensitivities are in dBm.
    Blank lines and ``#`` comments are ignored.
    """
    entries = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            cols = line.split()
            if len(cols) != 7:
                raise ConfigurationError(f"{path}:{lineno}: expected 7 columns, got {len(cols)}")
            try:
                sens = {w: float(v) for w, v in zip(WIDTHS, cols[3:])}
                entries.append(McsEntry(int(cols[0]), int(cols[1]), Fraction(cols[2]), sens))
            except ValueError as exc:
                raise ConfigurationError(f"{path}:{lineno}: {exc}") from None
    return validate_mcs_table(entries)


def validate_mcs_table(entries):
    entries = tuple(sorted(entries, key=lambda e: e.index))
    if not entries:
        raise ConfigurationError("MCS table is empty")
    for prev, cur in zip(entries, entries[1:]):
        for w in WIDTHS:
            if cur.min_sensitivity(w) < prev.min_sensitivity(w):
                raise ConfigurationError(
                    f"MCS sensitivities must not decrease with index (MCS {cur.index}, width {w})")
    return entries


def _to_ns(us):
    return round(Fraction(str(us)) * 1000)


@dataclass(frozen=True)
class PhyParams:
    """MAC/PHY constants. Times in microseconds, lengths in bits."""

    slot_us: float = 9
    sifs_us: float = 16
    difs_us: float = 34
    pifs_us: float = 25
    phy_legacy_us: float = 20
    phy_he_su_us: float = 164
    symbol_legacy_us: float = 4
    symbol_us: float = 16
    frame_bits: int = 12000
    frames_per_ampdu: int = 64
    back_bits: int = 432
    rts_bits: int = 160
    cts_bits: int = 112
    service_bits: int = 16
    delimiter_bits: int = 32
    mac_header_bits: int = 320
    tail_bits: int = 18
    cw_min: int = 16
    backoff_stages: int = 5
    packet_error_rate: float = 0.1
    legacy_bits_per_symbol: int = 24

    def __post_init__(self):
        for name, value in vars(self).items():
            if name == "packet_error_rate":
                if not 0 <= value < 1:
                    raise ConfigurationError("packet_error_rate must lie in [0, 1)")
            elif name == "cw_min":
                if value < 2:
                    raise ConfigurationError("cw_min must be at least 2")
            elif not value > 0:
                raise ConfigurationError(f"{name} must be positive")
        if self.backoff_stages != 5:
            log.warning("backoff_stages=%s is ignored: the analytical model uses a "
                        "memoryless attempt rate", self.backoff_stages)

    @property
    def useful_bits(self):
        """Payload bits delivered by one successful A-MPDU exchange."""
        return self.frames_per_ampdu * self.frame_bits


def subcarriers(width):
    try:
        return SUBCARRIERS[width]
    except KeyError:
        raise ConfigurationError(f"no 11ax subcarrier count for width {width!r}") from None


def bits_per_symbol(mcs, width):
    """Data bits per OFDM symbol for a single spatial stream."""
    return subcarriers(width) * mcs.modulation_bits * mcs.coding_rate


def data_rate_bps(mcs, width, phy=PhyParams()):
    return float(bits_per_symbol(mcs, width) / (Fraction(_to_ns(phy.symbol_us)) / 10**9))


def select_mcs(rx_power_dbm, width, table=DEFAULT_MCS_TABLE):
    """Highest MCS whose minimum sensitivity at ``width`` is met.

    ``rx_power_dbm`` is the interference-free received power over the whole
    transmission channel.
    """
    best = None
    for entry in table:
        if rx_power_dbm >= entry.min_sensitivity(width):
            if best is None or entry.index > best.index:
                best = entry
    if best is None:
        raise LinkBudgetError(
            f"received power {rx_power_dbm:.2f} dBm is below every MCS sensitivity "
            f"at {20 * width} MHz")
    return best


def control_frame_duration_ns(payload_bits, phy=PhyParams()):
    """Legacy-rate control frame: preamble plus whole legacy symbols."""
    if payload_bits <= 0:
        raise ValueError("payload_bits must be positive")
    n_sym = math.ceil(Fraction(phy.service_bits + payload_bits + phy.tail_bits,
                               phy.legacy_bits_per_symbol))
    return _to_ns(phy.phy_legacy_us) + n_sym * _to_ns(phy.symbol_legacy_us)


def rts_duration_ns(phy=PhyParams()):
    return control_frame_duration_ns(phy.rts_bits, phy)


def cts_duration_ns(phy=PhyParams()):
    return control_frame_duration_ns(phy.cts_bits, phy)


def back_duration_ns(phy=PhyParams()):
    return control_frame_duration_ns(phy.back_bits, phy)


def data_duration_ns(mcs, width, phy=PhyParams()):
    """HE-SU A-MPDU duration for the given MCS and width."""
    payload = (phy.service_bits
               + phy.frames_per_ampdu * (phy.delimiter_bits + phy.mac_header_bits + phy.frame_bits)
               + phy.tail_bits)
    n_sym = math.ceil(payload / bits_per_symbol(mcs, width))
    return _to_ns(phy.phy_he_su_us) + n_sym * _to_ns(phy.symbol_us)


def success_duration_ns(mcs, width, phy=PhyParams()):
    """RTS/CTS/DATA/BACK exchange followed by DIFS and one empty slot."""
    sifs = _to_ns(phy.sifs_us)
    return (rts_duration_ns(phy) + sifs + cts_duration_ns(phy) + sifs
            + data_duration_ns(mcs, width, phy) + sifs + back_duration_ns(phy)
            + _to_ns(phy.difs_us) + _to_ns(phy.slot_us))


def departure_rate(mcs, width, phy=PhyParams()):
    """Backward transition rate mu, in s^-1."""
    return 1e9 / success_duration_ns(mcs, width, phy)


def expected_backoff_slots(phy=PhyParams()):
    return Fraction(phy.cw_min - 1, 2)


def backoff_rate(phy=PhyParams()):
    """Forward transition (attempt) rate lambda, in s^-1."""
    if phy.cw_min < 2:
        raise ConfigurationError("cw_min must be at least 2")
    return float(Fraction(10**9) / (expected_backoff_slots(phy) * _to_ns(phy.slot_us)))
