"""Stationary distribution of a CTMN and the throughput/fairness metrics."""
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.csgraph
import scipy.sparse.linalg

from .channels import BASIC_CHANNEL_MHZ
from .ctmn import active
from .propagation import sinr_db

DENSE_THRESHOLD = 5000


class ReducibleChainError(np.linalg.LinAlgError):
    """The rate matrix has more than one strongly connected component."""

    def __init__(self, components):
        self.components = components
        super().__init__(f"chain is reducible: {len(components)} strongly connected components "
                         f"(state indices {components})")


@dataclass
class Stationary:
    pi: np.ndarray
    residual: float

    def __getitem__(self, k):
        return self.pi[k]


def _components(Q):
    graph = sp.csr_matrix(Q).copy()
    graph.setdiag(0)
    graph.eliminate_zeros()
    n, labels = scipy.sparse.csgraph.connected_components(graph, directed=True,
                                                          connection="strong")
    return n, labels


def solve_equilibrium(Q, dense_threshold=DENSE_THRESHOLD, tol=1e-9):
    """Solve ``pi Q = 0`` with ``sum(pi) = 1``.

    The last balance equation is replaced by the normalisation constraint and
    the resulting system is solved directly: LU with partial pivoting when the
    chain has at most ``dense_threshold`` states, sparse LU above that.
    """
    if hasattr(Q, "Q"):
        Q = Q.Q
    Qs = sp.csr_matrix(Q, dtype=float)
    n = Qs.shape[0]
    if n == 1:
        return Stationary(np.ones(1), 0.0)
    n_comp, labels = _components(Qs)
    if n_comp > 1:
        raise ReducibleChainError([np.flatnonzero(labels == c).tolist() for c in range(n_comp)])

    b = np.zeros(n)
    b[-1] = 1.0
    if n <= dense_threshold:
        A = Qs.toarray().T
        A[-1, :] = 1.0
        pi = scipy.linalg.lu_solve(scipy.linalg.lu_factor(A), b)
    else:
        A = Qs.T.tolil()
        A[n - 1, :] = np.ones(n)
        pi = scipy.sparse.linalg.spsolve(A.tocsc(), b)

    if pi.min() < -1e-12:
        raise np.linalg.LinAlgError(f"negative stationary probability {pi.min():.3e}")
    pi = np.clip(pi, 0.0, None)
    pi /= pi.sum()
    residual = float(np.abs(Qs.T @ pi).max())
    scale = float(np.abs(Qs.diagonal()).max()) or 1.0
    if residual > tol * scale:
        raise np.linalg.LinAlgError(f"stationary residual {residual:.3e} above tolerance")
    return Stationary(pi, residual)


def occupancy_stderr(Q, pi, horizon):
    """Asymptotic standard error of time-averaged state occupancies.

    For a time average over ``[0, T]`` the variance of the fraction of time
    spent in state ``s`` tends to ``2 pi_s D_ss / T``, with ``D`` the deviation
    matrix ``(1 pi - Q)^-1 - 1 pi``.
    """
    Qd = Q.toarray() if sp.issparse(Q) else np.asarray(Q, dtype=float)
    n = Qd.shape[0]
    Pi = np.outer(np.ones(n), pi)
    D = np.linalg.inv(Pi - Qd) - Pi
    return np.sqrt(np.clip(2.0 * pi * np.diag(D) / horizon, 0.0, None))


@dataclass
class WlanReport:
    name: str
    throughput_bps: float
    airtime: float
    bandwidth_mhz: float
    sinr_ok: dict = field(default_factory=dict)

    @property
    def throughput_mbps(self):
        return self.throughput_bps / 1e6


@dataclass
class ScenarioReport:
    wlans: list
    pi: np.ndarray
    n_states: int
    global_size: int
    jain: float
    proportional: float
    starved: list
    diagnostics: list = field(default_factory=list)

    @property
    def throughput_bps(self):
        return sum(w.throughput_bps for w in self.wlans)

    @property
    def throughput_mbps(self):
        return self.throughput_bps / 1e6

    def __getitem__(self, name):
        for w in self.wlans:
            if w.name == name:
                return w
        raise KeyError(name)


def sinr_table(ctmn, wlans, radio, n_sys):
    """Capture-effect pass fraction per (state, WLAN).

    Entry ``[k, x]`` is the share of WLAN ``x``'s STAs whose SINR in state
    ``k`` exceeds the capture-effect threshold (0 when ``x`` is idle).
    """
    out = np.zeros((len(ctmn.states), len(wlans)))
    for k, s in enumerate(ctmn.states):
        on = active(s)
        for x in on:
            others = [(wlans[i], s[i]) for i in on if i != x]
            ok = [sinr_db(wlans[x], s[x], others, radio, n_sys, sta) > radio.capture_effect_db
                  for sta in range(len(wlans[x].stas))]
            out[k, x] = sum(ok) / len(ok)
    return out


def throughput(pi, ctmn, wlans, radio, phy, n_sys, capture=None):
    """Average throughput of each WLAN in bit/s.

    Sum over states where the WLAN is active of
    ``E[L] * mu_w(s) * pi_s * (1 - eta)``, counting only states where its
    SINR is above the capture-effect threshold.
    """
    if capture is None:
        capture = sinr_table(ctmn, wlans, radio, n_sys)
    out = np.zeros(len(wlans))
    for k, s in enumerate(ctmn.states):
        for x in active(s):
            link = ctmn.links[x]
            width = s[x].width
            if not link.usable(width):
                continue
            out[x] += capture[k, x] * link.mu[width] * pi[k]
    return out * phy.useful_bits * (1.0 - phy.packet_error_rate)


def airtime_and_bandwidth(pi, ctmn):
    """Per-WLAN fraction of time active and mean occupied bandwidth (MHz)."""
    n = len(ctmn.names)
    airtime, bw = np.zeros(n), np.zeros(n)
    for k, s in enumerate(ctmn.states):
        for x in active(s):
            airtime[x] += pi[k]
            bw[x] += pi[k] * s[x].width * BASIC_CHANNEL_MHZ
    return airtime, bw


def fairness(throughputs):
    """Jain's index and proportional fairness of a throughput vector.

    Proportional fairness is ``sum(log10(G_w))`` with ``G_w`` in whatever unit
    the caller passes (the runner uses Mbps).  Zero entries make it ``-inf``
    and are listed as starved by index.

    Returns
    -------
    (jain, proportional, starved)
    """
    g = np.asarray(throughputs, dtype=float)
    if g.size == 0:
        raise ValueError("fairness needs at least one WLAN")
    starved = np.flatnonzero(g <= 0).tolist()
    sq = float((g ** 2).sum())
    jain = float(g.sum() ** 2 / (g.size * sq)) if sq > 0 else math.nan
    prop = -math.inf if starved else float(np.log10(g).sum())
    return jain, prop, starved
