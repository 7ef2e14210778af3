from fractions import Fraction

import pytest

from dcbctmn.channels import ConfigurationError
from dcbctmn.phy import (DEFAULT_MCS_TABLE, LinkBudgetError, PhyParams, back_duration_ns,
                         backoff_rate, bits_per_symbol, cts_duration_ns, data_duration_ns,
                         data_rate_bps, departure_rate, expected_backoff_slots, load_mcs_table,
                         rts_duration_ns, select_mcs, subcarriers, success_duration_ns)

import oracle

MCS = {m.index: m for m in DEFAULT_MCS_TABLE}


@pytest.mark.parametrize("w,n", [(1, 234), (2, 468), (4, 980), (8, 1960)])
def test_subcarriers(w, n):
    assert subcarriers(w) == n


def test_subcarriers_bad_width():
    with pytest.raises(ConfigurationError):
        subcarriers(3)


def test_bits_per_symbol():
    assert bits_per_symbol(MCS[11], 1) == 1950
    assert bits_per_symbol(MCS[0], 1) == 117
    assert bits_per_symbol(MCS[11], 8) == Fraction(49000, 3)
    assert data_rate_bps(MCS[11], 1) == pytest.approx(121.875e6)


def test_control_frames():
    assert rts_duration_ns() == 56_000
    assert cts_duration_ns() == 48_000
    assert back_duration_ns() == 100_000


@pytest.mark.parametrize("w", [1, 2, 4, 8])
def test_data_and_success_duration(w):
    assert data_duration_ns(MCS[11], w) == oracle.t_data_us(w) * 1000
    assert success_duration_ns(MCS[11], w) == oracle.t_suc_us(w) * 1000
    assert departure_rate(MCS[11], w) == pytest.approx(oracle.mu(w), rel=1e-12)


def test_published_durations():
    assert data_duration_ns(MCS[11], 1) == 6_660_000
    assert success_duration_ns(MCS[11], 1) == 6_955_000
    assert data_duration_ns(MCS[11], 8) == 948_000


def test_single_symbol_limit():
    class Huge:
        modulation_bits = 10**9
        coding_rate = Fraction(1)
    assert data_duration_ns(Huge, 8) == (164 + 16) * 1000


@pytest.mark.parametrize("cw,slots", [(16, Fraction(15, 2)), (3, 1), (2, Fraction(1, 2))])
def test_backoff(cw, slots):
    assert expected_backoff_slots(PhyParams(cw_min=cw)) == slots
    assert backoff_rate(PhyParams(cw_min=cw)) == pytest.approx(1e6 / (float(slots) * 9))


def test_backoff_rate_default():
    assert backoff_rate() == pytest.approx(oracle.LAMBDA)


def test_invalid_params():
    with pytest.raises(ConfigurationError):
        PhyParams(cw_min=1)
    with pytest.raises(ConfigurationError):
        PhyParams(slot_us=0)


def test_mcs_selection():
    assert select_mcs(-30.0, 1).index == 11
    assert select_mcs(-70.0, 1).index == 4
    assert select_mcs(-69.5, 2).index == 3
    with pytest.raises(LinkBudgetError):
        select_mcs(-90.0, 1)


def test_mcs_sensitivity_relaxes_with_width():
    for m in DEFAULT_MCS_TABLE:
        s = [m.min_sensitivity(w) for w in (1, 2, 4, 8)]
        assert s == [s[0] + 3 * k for k in range(4)]


def test_load_mcs_table(tmp_path):
    p = tmp_path / "t.txt"
    p.write_text("# idx bits rate s20 s40 s80 s160\n0 1 1/2 -82 -79 -76 -73\n1 2 1/2 -79 -76 -73 -70\n")
    table = load_mcs_table(p)
    assert [m.index for m in table] == [0, 1]
    assert select_mcs(-78.0, 1, table).index == 1


def test_load_mcs_table_rejects_non_monotone(tmp_path):
    p = tmp_path / "t.txt"
    p.write_text("0 1 1/2 -70 -67 -64 -61\n1 2 1/2 -79 -76 -73 -70\n")
    with pytest.raises(ConfigurationError):
        load_mcs_table(p)
