"""Continuous-time Markov network of spatially distributed DCB WLANs.

A network state is a tuple with one entry per WLAN: ``None`` when the WLAN is
idle, otherwise the :class:`~dcbctmn.channels.Channel` it transmits on.

:func:`explore` discovers the feasible states breadth first starting from the
empty state.  Inside each state WLANs are handled in declaration order: an
active WLAN contributes a backward transition (it finishes its exchange), an
idle one senses its allocation, applies its DCB policy and contributes one
forward transition per channel the policy may pick.
"""
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np
import scipy.sparse as sp

from . import phy as _phy
from .channels import candidate_tx_channels, channels_overlap
from .network import profile_link
from .policies import select
from .propagation import sensed_free_set

DEFAULT_STATE_CAP = 10**6


class StateSpaceError(RuntimeError):
    """State space too large or internally inconsistent."""


def empty_state(n):
    return (None,) * n


def active(state):
    return [i for i, ch in enumerate(state) if ch is not None]


def with_channel(state, i, channel):
    s = list(state)
    s[i] = channel
    return tuple(s)


def state_label(state, names):
    """Compact label such as ``A[1,2] B[3,4]``; the empty state is ``-``."""
    parts = [f"{names[i]}{state[i]}" for i in active(state)]
    return " ".join(parts) if parts else "-"


def global_space_size(wlans, scheme):
    return math.prod(1 + len(candidate_tx_channels(w.allocation, scheme)) for w in wlans)


def generate_global_space(wlans, scheme, state_cap=DEFAULT_STATE_CAP):
    """Every combination of idle / candidate channel per WLAN.

    Ordered as a Cartesian product with the first WLAN varying slowest and
    ``None`` preceding the candidates (narrowest first).
    """
    size = global_space_size(wlans, scheme)
    if size > state_cap:
        raise StateSpaceError(f"global state space has {size} states, above the cap of {state_cap}")
    options = [[None, *candidate_tx_channels(w.allocation, scheme)] for w in wlans]
    return [tuple(s) for s in product(*options)]


@dataclass(frozen=True)
class Transition:
    source: int
    target: int
    wlan: int
    kind: str           # "forward" or "backward"
    rate: float
    alpha: Fraction | None = None


@dataclass
class Ctmn:
    """Feasible states in discovery order plus the transition-rate matrix."""

    names: list
    states: list
    transitions: list
    global_size: int
    links: list = field(default_factory=list)
    backoff_rate: float = 0.0

    def __post_init__(self):
        self.index = {s: k for k, s in enumerate(self.states)}
        n = len(self.states)
        if self.transitions:
            rows = [t.source for t in self.transitions]
            cols = [t.target for t in self.transitions]
            vals = [t.rate for t in self.transitions]
            off = sp.csr_matrix((vals, (rows, cols)), shape=(n, n))
        else:
            off = sp.csr_matrix((n, n))
        self.Q = (off - sp.diags(np.asarray(off.sum(axis=1)).ravel())).tocsr()

    def __len__(self):
        return len(self.states)

    def label(self, k):
        return state_label(self.states[k], self.names)

    def dense(self):
        return self.Q.toarray()

    def transitions_from(self, k):
        return [t for t in self.transitions if t.source == k]

    def dump(self):
        """Line-oriented text listing of states and transitions (1-based ids)."""
        lines = [f"# ctmn states={len(self.states)} transitions={len(self.transitions)} "
                 f"global={self.global_size}"]
        for k, s in enumerate(self.states):
            lines.append(f"S {k + 1} {state_label(s, self.names)}")
        for t in self.transitions:
            alpha = "-" if t.alpha is None else str(t.alpha)
            lines.append(f"T {t.source + 1} {t.target + 1} {self.names[t.wlan]} {t.kind} "
                         f"rate={t.rate!r} alpha={alpha}")
        return "\n".join(lines) + "\n"


def explore(wlans, scheme, radio, phy=_phy.PhyParams(), mcs_table=_phy.DEFAULT_MCS_TABLE,
            state_cap=DEFAULT_STATE_CAP, links=None):
    """Build the feasible state space and rate matrix of a scenario."""
    wlans = list(wlans)
    n = len(wlans)
    global_size = global_space_size(wlans, scheme)
    if global_size > state_cap:
        raise StateSpaceError(
            f"global state space has {global_size} states, above the cap of {state_cap}")
    if links is None:
        links = [profile_link(w, scheme, radio, phy, mcs_table) for w in wlans]
    candidates = [set(candidate_tx_channels(w.allocation, scheme)) for w in wlans]
    lam = _phy.backoff_rate(phy)

    states = [empty_state(n)]
    index = {states[0]: 0}
    transitions = []
    queue = deque([0])

    def discover(state):
        k = index.get(state)
        if k is None:
            k = len(states)
            states.append(state)
            index[state] = k
            queue.append(k)
        return k

    while queue:
        k = queue.popleft()
        s = states[k]
        for x, w in enumerate(wlans):
            ch = s[x]
            if ch is not None:
                target = discover(with_channel(s, x, None))
                transitions.append(Transition(k, target, x, "backward", links[x].mu[ch.width]))
                continue
            others = [(wlans[i], s[i]) for i in active(s)]
            free = sensed_free_set(w, others, radio, scheme.n_sys)
            for chosen, alpha in select(w.policy, w.allocation, free, scheme):
                if chosen not in candidates[x]:
                    raise StateSpaceError(f"policy picked {chosen} outside the global space")
                target = discover(with_channel(s, x, chosen))
                transitions.append(Transition(k, target, x, "forward", float(alpha) * lam, alpha))
        if len(states) > state_cap:
            raise StateSpaceError(f"feasible state space exceeded the cap of {state_cap}")

    return Ctmn([w.name for w in wlans], states, transitions, global_size, links, lam)


def has_overlap(state):
    chans = [c for c in state if c is not None]
    return any(channels_overlap(a, b) for i, a in enumerate(chans) for b in chans[i + 1:])


def gillespie_sample(Q, horizon, seed, start=0):
    """Time-weighted state occupancy of one simulated trajectory of ``Q``.

    Parameters
    ----------
    Q : array_like or sparse matrix or Ctmn
        Transition-rate matrix (rows sum to zero).
    horizon : float
        Simulated time in seconds.
    seed : int
        Seed for ``numpy.random.default_rng`` (PCG64).
    start : int
        Initial state index.

    Returns
    -------
    ndarray
        Fraction of ``horizon`` spent in each state.
    """
    if isinstance(Q, Ctmn):
        Q = Q.Q
    if horizon <= 0:
        raise ValueError("horizon must be positive")
    Q = sp.csr_matrix(Q)
    n = Q.shape[0]
    targets, cumprobs, exit_rates = [], [], np.zeros(n)
    for i in range(n):
        row = Q.getrow(i)
        mask = row.indices != i
        cols, vals = row.indices[mask], row.data[mask]
        keep = vals > 0
        cols, vals = cols[keep], vals[keep]
        total = vals.sum()
        exit_rates[i] = total
        targets.append(cols)
        cumprobs.append(np.cumsum(vals) / total if total > 0 else vals)

    rng = np.random.default_rng(seed)
    occupancy = np.zeros(n)
    t, state = 0.0, start
    batch = 4096
    expo, unif, j = rng.standard_exponential(batch), rng.random(batch), 0
    while True:
        rate = exit_rates[state]
        if rate == 0:
            occupancy[state] += horizon - t
            break
        if j == batch:
            expo, unif, j = rng.standard_exponential(batch), rng.random(batch), 0
        dwell = expo[j] / rate
        if t + dwell >= horizon:
            occupancy[state] += horizon - t
            break
        occupancy[state] += dwell
        t += dwell
        pos = int(np.searchsorted(cumprobs[state], unif[j], side="right"))
        state = targets[state][min(pos, len(targets[state]) - 1)]
        j += 1
    return occupancy / horizon
