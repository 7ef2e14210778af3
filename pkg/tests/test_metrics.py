import math

import numpy as np
import pytest
import scipy.sparse as sp

from dcbctmn.channels import Allocation, Channel, ChannelizationScheme
from dcbctmn.ctmn import explore
from dcbctmn.metrics import (ReducibleChainError, airtime_and_bandwidth, fairness,
                             occupancy_stderr, solve_equilibrium, throughput)
from dcbctmn.network import Wlan
from dcbctmn.phy import PhyParams, backoff_rate, departure_rate, DEFAULT_MCS_TABLE
from dcbctmn.propagation import RadioConfig
from dcbctmn.runner import evaluate

import oracle


def test_two_state_closed_form():
    lam, mu = 7.0, 3.0
    st = solve_equilibrium(np.array([[-lam, lam], [mu, -mu]]))
    assert st.pi == pytest.approx([mu / (lam + mu), lam / (lam + mu)])
    assert st.residual < 1e-12


def test_single_state():
    assert solve_equilibrium(np.zeros((1, 1))).pi.tolist() == [1.0]


def test_reducible_chain_reported():
    q = np.array([[-1.0, 1.0, 0.0], [0.0, -1.0, 1.0], [0.0, 0.0, 0.0]])
    with pytest.raises(ReducibleChainError) as err:
        solve_equilibrium(q)
    assert len(err.value.components) == 3


@pytest.mark.parametrize("name", ["scenario_I", "scenario_II", "scenario_IV", "scenario_III_T3"])
def test_dense_sparse_and_oracle_agree(fixture, name):
    cfg = fixture(name).with_policies("PU")
    c = explore(cfg.wlans, cfg.scheme, cfg.radio, cfg.phy)
    dense = solve_equilibrium(c.Q)
    sparse = solve_equilibrium(c.Q, dense_threshold=0)
    assert dense.pi == pytest.approx(sparse.pi, abs=1e-12)
    assert dense.pi.sum() == pytest.approx(1.0, abs=1e-12) and (dense.pi >= 0).all()
    assert np.abs(c.Q.T @ dense.pi).max() <= 1e-9 * np.abs(c.Q.diagonal()).max()
    reach, rates = oracle.ctmn(
        [{"ap": w.ap, "sta": w.stas[0], "policy": "PU",
          "alloc": (w.allocation.channel.lo, w.allocation.channel.hi, w.allocation.primary)}
         for w in cfg.wlans], cfg.n_sys, cfg.radio.adjacent_leakage_db)
    states, pi = oracle.stationary(reach, rates)
    ref = dict(zip(states, pi))
    for s, p in zip(c.states, dense.pi):
        key = tuple(None if ch is None else (ch.lo, ch.hi) for ch in s)
        assert p == pytest.approx(ref[key], abs=1e-10)


def _isolated(eta=0.1):
    w = Wlan("A", (0, 0), [(0, 1)], Allocation(Channel(1, 1), 1))
    phy = PhyParams(packet_error_rate=eta)
    c = explore([w], ChannelizationScheme(1), RadioConfig(), phy)
    return w, phy, c


def test_isolated_throughput_closed_form():
    w, phy, c = _isolated()
    pi = solve_equilibrium(c.Q).pi
    g = throughput(pi, c, [w], RadioConfig(), phy, 1)
    lam, mu = backoff_rate(phy), departure_rate(DEFAULT_MCS_TABLE[-1], 1, phy)
    assert g[0] == pytest.approx(768000 * mu * lam / (lam + mu) * 0.9, rel=1e-12)


def test_capture_failure_zeroes_throughput():
    w, phy, c = _isolated()
    pi = solve_equilibrium(c.Q).pi
    assert throughput(pi, c, [w], RadioConfig(capture_effect_db=200), phy, 1)[0] == 0.0


def test_airtime_and_bandwidth():
    w = Wlan("A", (0, 0), [(0, 1)], Allocation(Channel(1, 4), 1))
    c = explore([w], ChannelizationScheme(4), RadioConfig())
    pi = solve_equilibrium(c.Q).pi
    air, bw = airtime_and_bandwidth(pi, c)
    assert bw[0] == pytest.approx(air[0] * 80.0)


def test_starved_wlan_airtime(fixture):
    # a WLAN pushed out of its primary by a neighbour that never leaves
    r = evaluate(fixture("scenario_III_T2"))
    assert r["B"].airtime < 0.01 and r["A"].airtime > 0.98


def test_fairness():
    assert fairness([5.0, 5.0, 5.0])[0] == pytest.approx(1.0)
    jain, prop, starved = fairness([10.0, 0.0])
    assert jain == pytest.approx(0.5) and prop == -math.inf and starved == [1]
    assert math.isnan(fairness([0.0, 0.0])[0])
    assert fairness([10.0, 100.0])[1] == pytest.approx(3.0)
    with pytest.raises(ValueError):
        fairness([])


def test_occupancy_stderr_two_state():
    lam, mu, T = 2.0, 3.0, 100.0
    q = np.array([[-lam, lam], [mu, -mu]])
    pi = solve_equilibrium(q).pi
    se = occupancy_stderr(sp.csr_matrix(q), pi, T)
    # on-off process: var of time fraction ~ 2 lam mu / (lam + mu)^3 / T
    assert se[0] == pytest.approx(math.sqrt(2 * lam * mu / (lam + mu) ** 3 / T))
    assert se[1] == pytest.approx(se[0])


def test_occupancy_stderr_calibrated(fixture):
    cfg = fixture("scenario_III_T3")
    c = explore(cfg.wlans, cfg.scheme, cfg.radio, cfg.phy)
    pi = solve_equilibrium(c.Q).pi
    from dcbctmn.ctmn import gillespie_sample
    se = occupancy_stderr(c.Q, pi, 20.0)
    z = np.array([(gillespie_sample(c, 20.0, seed=s) - pi) / se for s in range(60)])
    keep = pi > 1e-3
    assert 0.8 < z[:, keep].std() < 1.2
    assert abs(z[:, keep].mean()) < 0.3
