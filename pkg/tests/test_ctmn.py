import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from dcbctmn.channels import Allocation, Channel, ChannelizationScheme
from dcbctmn.ctmn import (StateSpaceError, explore, generate_global_space, gillespie_sample,
                          global_space_size, has_overlap, state_label)
from dcbctmn.deployment import DeploymentSpec, generate_deployment
from dcbctmn.network import Wlan
from dcbctmn.propagation import RadioConfig

import oracle


def _explore(cfg):
    return explore(cfg.wlans, cfg.scheme, cfg.radio, cfg.phy, cfg.mcs_table, cfg.solver.state_cap)


def _as_oracle(cfg):
    return [{"ap": w.ap[:2], "sta": w.stas[0][:2],
             "alloc": (w.allocation.channel.lo, w.allocation.channel.hi, w.allocation.primary),
             "policy": w.policy.value} for w in cfg.wlans]


def _key(state):
    return tuple(None if c is None else (c.lo, c.hi) for c in state)


def test_global_space_sizes(fixture):
    cfg = fixture("scenario_I")
    assert global_space_size(cfg.wlans, cfg.scheme) == 12
    assert len(generate_global_space(cfg.wlans, cfg.scheme)) == 12
    assert global_space_size(fixture("scenario_III_T1").wlans, ChannelizationScheme(1)) == 8
    one = Wlan("A", (0, 0), [(0, 1)], Allocation(Channel(1, 1), 1))
    assert global_space_size([one], ChannelizationScheme(1)) == 2


def test_global_space_cap(fixture):
    cfg = fixture("scenario_I")
    with pytest.raises(StateSpaceError):
        generate_global_space(cfg.wlans, cfg.scheme, state_cap=5)
    with pytest.raises(StateSpaceError):
        explore(cfg.wlans, cfg.scheme, cfg.radio, cfg.phy, state_cap=5)


def test_empty_network():
    c = explore([], ChannelizationScheme(1), RadioConfig())
    assert c.states == [()] and c.dense().tolist() == [[0.0]]


def test_scenario_I_am_discovery_order(fixture):
    c = _explore(fixture("scenario_I"))
    labels = [c.label(k) for k in range(len(c))]
    assert labels == ["-", "A[1,4]", "B[3,4]", "A[1,2] B[3,4]", "A[1,2]"]
    # A[1,2] alone is entered only when B leaves A[1,2] B[3,4]
    into = [t for t in c.transitions if t.target == 4]
    assert [(t.kind, c.label(t.source)) for t in into] == [("backward", "A[1,2] B[3,4]")]


@pytest.mark.parametrize("name,count", [("scenario_III_T1", 4), ("scenario_III_T2", 5),
                                        ("scenario_III_T3", 8), ("scenario_III_T4", 8)])
def test_single_channel_topologies(fixture, name, count):
    c = _explore(fixture(name))
    assert len(c) == count
    if name.endswith("T2"):
        assert sorted(c.label(k) for k in range(len(c))) == sorted(
            ["-", "A[1,1]", "B[1,1]", "C[1,1]", "A[1,1] C[1,1]"])


@pytest.mark.parametrize("name", ["scenario_I", "scenario_II", "scenario_IV", "scenario_III_T3"])
@pytest.mark.parametrize("policy", ["OP", "SCB", "AM", "PU"])
def test_matches_oracle(fixture, name, policy):
    cfg = fixture(name).with_policies(policy)
    c = _explore(cfg)
    leak = cfg.radio.adjacent_leakage_db
    reach, rates = oracle.ctmn(_as_oracle(cfg), cfg.n_sys, leak)
    assert {_key(s) for s in c.states} == reach
    got = {(_key(c.states[t.source]), _key(c.states[t.target])): t.rate for t in c.transitions}
    assert got.keys() == rates.keys()
    for k, r in rates.items():
        assert got[k] == pytest.approx(r, rel=1e-12)


def test_no_overlap_between_sensing_wlans(fixture):
    for name in ("scenario_I", "scenario_II"):
        for pol in ("OP", "SCB", "AM", "PU"):
            c = _explore(fixture(name).with_policies(pol))
            assert not any(has_overlap(s) for s in c.states)
    # hidden WLANs A and C may reuse the same spectrum
    c = _explore(fixture("scenario_IV"))
    assert any(has_overlap(s) for s in c.states)


def test_scb_and_am_identical_in_scenario_II(fixture):
    scb = _explore(fixture("scenario_II").with_policies("SCB"))
    am = _explore(fixture("scenario_II").with_policies("AM"))
    assert scb.states == am.states
    assert np.array_equal(scb.dense(), am.dense())


def test_dump_format(fixture):
    text = _explore(fixture("scenario_II").with_policies("PU")).dump()
    lines = text.splitlines()
    assert lines[0] == "# ctmn states=6 transitions=12 global=9"
    assert lines[1] == "S 1 -"
    assert any(line.startswith("T 1 2 A forward rate=") and line.endswith("alpha=1/2")
               for line in lines)
    assert state_label((None, None), ["A", "B"]) == "-"


def _random_cfg(seed, m=3, size=40.0):
    spec = DeploymentSpec(m, seed, map_width_m=size, map_height_m=size, n_sys=4,
                          widths=(1, 2, 4), policy="random")
    return generate_deployment(spec)


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, 10**6))
def test_generator_rows_sum_to_zero(seed):
    c = _explore(_random_cfg(seed))
    q = c.dense()
    assert np.allclose(q.sum(axis=1), 0.0, atol=1e-9 * np.abs(q).max())
    assert (q - np.diag(np.diag(q)) >= 0).all()


def test_gillespie_two_state():
    q = np.array([[-5.0, 5.0], [5.0, -5.0]])
    occ = gillespie_sample(q, 2000.0, seed=1)
    assert occ.sum() == pytest.approx(1.0)
    assert occ[0] == pytest.approx(0.5, abs=0.02)


def test_gillespie_deterministic(fixture):
    c = _explore(fixture("scenario_II"))
    a = gillespie_sample(c, 5.0, seed=3)
    b = gillespie_sample(c, 5.0, seed=3)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, gillespie_sample(c, 5.0, seed=4))


def test_gillespie_absorbing():
    q = np.array([[-1.0, 1.0], [0.0, 0.0]])
    occ = gillespie_sample(q, 1000.0, seed=0)
    assert occ[1] > 0.99
