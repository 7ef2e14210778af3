import pytest

from dcbctmn.channels import Channel
from dcbctmn.scenario import (ScenarioError, emit_scenario, fixture_path, load_fixture,
                              parse_scenario, scenario_from_dict)

FIXTURES = ["scenario_I", "scenario_II", "scenario_III_T1", "scenario_III_T2", "scenario_III_T3",
            "scenario_III_T3_noCE", "scenario_III_T4", "scenario_IV"]


def _write(tmp_path, text):
    p = tmp_path / "s.yaml"
    p.write_text(text)
    return p


MINIMAL = """
wlans:
  - {name: A, ap: [0, 0], stas: [[0, 1]], channel: 1, primary: 1}
"""


def test_minimal_defaults(tmp_path):
    cfg = parse_scenario(_write(tmp_path, MINIMAL))
    assert cfg.phy.cw_min == 16 and cfg.radio.cca_dbm == -82 and cfg.radio.tx_power_dbm == 15
    assert cfg.n_sys == 8 and cfg.wlans[0].policy.value == "AM"


def test_scenario_I_fixture():
    cfg = load_fixture("scenario_I")
    a, b = cfg.wlans
    assert (a.allocation.channel, a.allocation.primary) == (Channel(1, 4), 2)
    assert (b.allocation.channel, b.allocation.primary) == (Channel(3, 4), 3)


@pytest.mark.parametrize("name", FIXTURES)
def test_round_trip(tmp_path, name):
    cfg = load_fixture(name)
    out = tmp_path / "rt.yaml"
    emit_scenario(cfg, out)
    assert parse_scenario(out) == cfg
    assert parse_scenario(fixture_path(name)) == cfg


@pytest.mark.parametrize("text,field", [
    ("wlans:\n  - {name: A, ap: [0, 0], stas: [[0, 1]], channel: [1, 2], primary: 3}\n",
     "wlans[0].primary"),
    ("wlans:\n  - {name: A, ap: [0, 0], stas: [[0, 1]], channel: [2, 3], primary: 2}\n",
     "wlans[0].channel"),
    ("wlans:\n  - {name: A, ap: [0, 0], stas: [], channel: 1, primary: 1}\n", "wlans[0].stas"),
    ("wlans:\n  - {name: A, ap: [0, 0], stas: [[0, 1]], channel: 1, primary: 1}\n"
     "  - {name: A, ap: [9, 0], stas: [[9, 1]], channel: 1, primary: 1}\n", "wlans[1].name"),
    ("wlans:\n  - {name: A, ap: [0, 0], stas: [[0, 1]], channel: 1, primary: 1, policy: XY}\n",
     "wlans[0].policy"),
    ("wlans:\n  - {name: A, ap: [0, 0], stas: [[0, 1]], channel: 1}\n", "wlans[0].primary"),
    ("n_sys: 3\nwlans: []\n", "n_sys"),
    ("radio: {cca: -80}\nwlans: []\n", "radio.cca"),
    ("phy: {cw_min: 1}\nwlans: []\n", "phy"),
    ("colour: red\n", "colour"),
    ("wlans: [\n", "<file>"),
])
def test_validation_names_field(tmp_path, text, field):
    with pytest.raises(ScenarioError) as err:
        parse_scenario(_write(tmp_path, text))
    assert err.value.field == field


def test_custom_mcs_table(tmp_path):
    (tmp_path / "mcs.txt").write_text("0 1 1/2 -82 -79 -76 -73\n")
    p = _write(tmp_path, "mcs_table: mcs.txt\n" + MINIMAL)
    cfg = parse_scenario(p)
    assert len(cfg.mcs_table) == 1 and cfg.mcs_table_path == "mcs.txt"


def test_policy_helpers():
    cfg = load_fixture("scenario_IV").with_policies(["AM", "PU", "AM"])
    assert cfg.policy_label() == "AM-PU-AM"
    with pytest.raises(ValueError):
        cfg.with_policies(["AM", "PU"])


def test_from_dict_empty():
    cfg = scenario_from_dict({"wlans": []})
    assert cfg.wlans == ()
