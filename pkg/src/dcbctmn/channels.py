"""Basic channels, bonded channels and per-WLAN channel allocations.

Basic channels are 20 MHz units identified by 1-based integer indices.  A
bonded channel is an aligned run of ``2**k`` contiguous basic channels, as in
the 11ac/11ax channelization.
"""
from dataclasses import dataclass

BASIC_CHANNEL_MHZ = 20


class ConfigurationError(ValueError):
    """Raised for invalid channelization or allocation parameters."""


def is_power_of_two(n):
    return isinstance(n, int) and n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True, order=True)
class Channel:
    """Contiguous block ``[lo, hi]`` of basic channels (inclusive)."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo < 1 or self.hi < self.lo:
            raise ConfigurationError(f"invalid channel bounds [{self.lo}, {self.hi}]")

    @property
    def width(self):
        return self.hi - self.lo + 1

    @property
    def bandwidth_mhz(self):
        return self.width * BASIC_CHANNEL_MHZ

    @property
    def basic_channels(self):
        return range(self.lo, self.hi + 1)

    @property
    def is_aligned(self):
        return is_power_of_two(self.width) and (self.lo - 1) % self.width == 0

    def __contains__(self, c):
        return self.lo <= c <= self.hi

    def issubset(self, other):
        return other.lo <= self.lo and self.hi <= other.hi

    def __str__(self):
        return f"[{self.lo},{self.hi}]"


def channels_overlap(a, b):
    """True iff the two channels share at least one basic channel."""
    return a.lo <= b.hi and b.lo <= a.hi


def enumerate_valid_channels(n_sys):
    """All aligned power-of-two channels inside ``[1, n_sys]``.

    Ordered by ascending width, then ascending lower edge.  For ``n_sys`` basic
    channels there are ``2 * n_sys - 1`` of them.
    """
    if not is_power_of_two(n_sys):
        raise ConfigurationError(f"n_sys must be a power of two, got {n_sys!r}")
    out = []
    width = 1
    while width <= n_sys:
        out.extend(Channel(lo, lo + width - 1) for lo in range(1, n_sys + 1, width))
        width *= 2
    return out


@dataclass(frozen=True)
class ChannelizationScheme:
    """System channel of ``n_sys`` basic channels and its valid channel set."""

    n_sys: int

    def __post_init__(self):
        if not is_power_of_two(self.n_sys):
            raise ConfigurationError(f"n_sys must be a power of two, got {self.n_sys!r}")

    @property
    def valid_set(self):
        return enumerate_valid_channels(self.n_sys)

    def is_valid(self, channel):
        return channel.is_aligned and channel.hi <= self.n_sys


@dataclass(frozen=True)
class Allocation:
    """Allocated channel of a WLAN and its primary basic channel."""

    channel: Channel
    primary: int

    def __post_init__(self):
        if self.primary not in self.channel:
            raise ConfigurationError(
                f"primary channel {self.primary} outside allocation {self.channel}")

    def validate(self, scheme):
        if not scheme.is_valid(self.channel):
            raise ConfigurationError(
                f"allocation {self.channel} is not a valid channel for n_sys={scheme.n_sys}")


def candidate_tx_channels(alloc, scheme):
    """Valid channels inside the allocation that contain the primary.

    The candidates are nested around the primary and returned narrowest first.
    """
    alloc.validate(scheme)
    return [ch for ch in scheme.valid_set
            if ch.issubset(alloc.channel) and alloc.primary in ch]
