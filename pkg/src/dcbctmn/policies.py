"""Dynamic channel bonding policies.

Given the set of basic channels a WLAN finds idle when its backoff expires, a
policy returns the transmission channels it may pick together with their
probabilities.  Probabilities are exact fractions so that rate matrices are
reproducible bit for bit.
"""
import enum
from dataclasses import dataclass
from fractions import Fraction

from .channels import candidate_tx_channels


class Policy(str, enum.Enum):
    OP = "OP"     # only primary
    SCB = "SCB"   # static channel bonding
    AM = "AM"     # always max
    PU = "PU"     # probabilistic uniform

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        try:
            return cls[str(name).strip().upper()]
        except KeyError:
            raise ValueError(f"unknown DCB policy {name!r}; expected one of "
                             f"{', '.join(p.value for p in cls)}") from None

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ChannelChoice:
    """Candidate transmission channels and their selection probabilities."""

    options: tuple = ()

    def __post_init__(self):
        if self.options and sum(p for _, p in self.options) != 1:
            raise ValueError("channel choice probabilities must sum to one")

    def __iter__(self):
        return iter(self.options)

    def __len__(self):
        return len(self.options)

    def __bool__(self):
        return bool(self.options)

    @property
    def channels(self):
        return [ch for ch, _ in self.options]

    def probability(self, channel):
        return dict(self.options).get(channel, Fraction(0))


EMPTY = ChannelChoice()


def select(policy, alloc, free, scheme):
    """Apply ``policy`` to the idle basic channels ``free`` of allocation ``alloc``."""
    policy = Policy.parse(policy)
    if alloc.primary not in free:
        return EMPTY
    usable = [ch for ch in candidate_tx_channels(alloc, scheme)
              if all(c in free for c in ch.basic_channels)]
    if policy is Policy.OP:
        chosen = [usable[0]]
    elif policy is Policy.SCB:
        chosen = [alloc.channel] if alloc.channel in usable else []
    elif policy is Policy.AM:
        chosen = [usable[-1]]
    else:
        chosen = usable
    if not chosen:
        return EMPTY
    p = Fraction(1, len(chosen))
    return ChannelChoice(tuple((ch, p) for ch in chosen))
