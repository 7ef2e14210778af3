"""Scenario files: a YAML document describing the WLANs and model parameters.

Example::

    name: scenario_II
    n_sys: 2
    radio: {adjacent_leakage_db: null}
    phy: {packet_error_rate: 0.0}
    wlans:
      - {name: A, ap: [0, 0], stas: [[0, 1]], channel: [1, 2], primary: 1, policy: OP}
      - {name: B, ap: [10, 0], stas: [[10, 1]], channel: [1, 2], primary: 2, policy: OP}

``radio``, ``phy`` and ``solver`` are optional; every omitted key takes its
default.  ``mcs_table`` may name a text file in the format read by
:func:`dcbctmn.phy.load_mcs_table`, relative to the scenario file.
"""
import dataclasses
import os
from dataclasses import dataclass, field

import yaml

from . import phy as _phy
from .channels import Allocation, Channel, ChannelizationScheme, ConfigurationError
from .ctmn import DEFAULT_STATE_CAP
from .metrics import DENSE_THRESHOLD
from .network import Wlan
from .propagation import RadioConfig


class ScenarioError(ValueError):
    """Validation failure; ``field`` names the offending entry."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


@dataclass(frozen=True)
class SolverOptions:
    state_cap: int = DEFAULT_STATE_CAP
    dense_threshold: int = DENSE_THRESHOLD
    tolerance: float = 1e-9


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    n_sys: int
    wlans: tuple
    radio: RadioConfig = RadioConfig()
    phy: _phy.PhyParams = _phy.PhyParams()
    solver: SolverOptions = SolverOptions()
    mcs_table_path: str | None = None
    description: str = ""
    mcs_table: tuple = field(default=_phy.DEFAULT_MCS_TABLE, compare=False, repr=False)

    @property
    def scheme(self):
        return ChannelizationScheme(self.n_sys)

    def with_policies(self, policies):
        """Copy with per-WLAN policies replaced (one policy or one per WLAN)."""
        if isinstance(policies, str) or not hasattr(policies, "__len__"):
            policies = [policies] * len(self.wlans)
        wlans = tuple(w.with_policy(p) for w, p in zip(self.wlans, policies, strict=True))
        return dataclasses.replace(self, wlans=wlans)

    def policy_label(self):
        return "-".join(str(w.policy) for w in self.wlans)


def _section(cls, data, where):
    if data is None:
        return cls()
    if not isinstance(data, dict):
        raise ScenarioError(where, "expected a mapping")
    known = {f.name for f in dataclasses.fields(cls)}
    for key in data:
        if key not in known:
            raise ScenarioError(f"{where}.{key}", "unknown parameter")
    try:
        return cls(**data)
    except (ConfigurationError, TypeError) as exc:
        raise ScenarioError(where, str(exc)) from None


def _point(value, where):
    if not isinstance(value, (list, tuple)) or len(value) not in (2, 3):
        raise ScenarioError(where, "expected [x, y] or [x, y, z]")
    try:
        return tuple(float(v) for v in value)
    except (TypeError, ValueError):
        raise ScenarioError(where, "coordinates must be numbers") from None


WLAN_KEYS = {"name", "ap", "stas", "channel", "primary", "policy"}


def _wlan(data, where, scheme):
    if not isinstance(data, dict):
        raise ScenarioError(where, "expected a mapping")
    for key in data:
        if key not in WLAN_KEYS:
            raise ScenarioError(f"{where}.{key}", "unknown key")
    for key in ("name", "ap", "stas", "channel", "primary"):
        if key not in data:
            raise ScenarioError(f"{where}.{key}", "missing")
    stas = data["stas"]
    if not isinstance(stas, list) or not stas:
        raise ScenarioError(f"{where}.stas", "at least one STA is required")
    stas = [_point(s, f"{where}.stas[{i}]") for i, s in enumerate(stas)]
    ch = data["channel"]
    try:
        if isinstance(ch, int):
            ch = [ch, ch]
        channel = Channel(int(ch[0]), int(ch[1]))
    except (TypeError, ValueError, IndexError, ConfigurationError) as exc:
        raise ScenarioError(f"{where}.channel", f"expected [lo, hi] ({exc})") from None
    if not scheme.is_valid(channel):
        raise ScenarioError(f"{where}.channel",
                            f"{channel} is not a valid channel for n_sys={scheme.n_sys}")
    try:
        alloc = Allocation(channel, int(data["primary"]))
    except (ConfigurationError, TypeError, ValueError) as exc:
        raise ScenarioError(f"{where}.primary", str(exc)) from None
    try:
        return Wlan(str(data["name"]), _point(data["ap"], f"{where}.ap"), stas, alloc,
                    data.get("policy", "AM"))
    except ValueError as exc:
        field_ = f"{where}.policy" if "policy" in str(exc) else where
        raise ScenarioError(field_, str(exc)) from None


TOP_KEYS = {"name", "description", "n_sys", "radio", "phy", "solver", "mcs_table", "wlans"}


def scenario_from_dict(data, base_dir="."):
    if not isinstance(data, dict):
        raise ScenarioError("<root>", "expected a mapping")
    for key in data:
        if key not in TOP_KEYS:
            raise ScenarioError(key, "unknown key")
    n_sys = data.get("n_sys", 8)
    try:
        scheme = ChannelizationScheme(n_sys)
    except ConfigurationError as exc:
        raise ScenarioError("n_sys", str(exc)) from None
    radio = _section(RadioConfig, data.get("radio"), "radio")
    phy = _section(_phy.PhyParams, data.get("phy"), "phy")
    solver = _section(SolverOptions, data.get("solver"), "solver")
    wlans_data = data.get("wlans", [])
    if not isinstance(wlans_data, list):
        raise ScenarioError("wlans", "expected a list")
    wlans = tuple(_wlan(w, f"wlans[{i}]", scheme) for i, w in enumerate(wlans_data))
    names = [w.name for w in wlans]
    for i, name in enumerate(names):
        if name in names[:i]:
            raise ScenarioError(f"wlans[{i}].name", f"duplicate WLAN name {name!r}")
    table_path = data.get("mcs_table")
    table = _phy.DEFAULT_MCS_TABLE
    if table_path is not None:
        try:
            table = _phy.load_mcs_table(os.path.join(base_dir, table_path))
        except (OSError, ConfigurationError) as exc:
            raise ScenarioError("mcs_table", str(exc)) from None
    return ScenarioConfig(str(data.get("name", "scenario")), n_sys, wlans, radio, phy, solver,
                          table_path, str(data.get("description", "")), table)


def parse_scenario(path):
    """Load and validate a scenario file."""
    try:
        with open(path) as fh:
            data = yaml.safe_load(fh)
    except yaml.YAMLError as exc:
        raise ScenarioError("<file>", f"invalid YAML: {exc}") from None
    return scenario_from_dict(data, os.path.dirname(os.path.abspath(path)))


def _plain(v):
    if isinstance(v, float) and v.is_integer():
        return int(v) if abs(v) < 1e15 else v
    return v


def scenario_to_dict(config):
    """Fully expanded, YAML-ready representation of ``config``."""
    out = {"name": config.name}
    if config.description:
        out["description"] = config.description
    out["n_sys"] = config.n_sys
    out["radio"] = dataclasses.asdict(config.radio)
    out["phy"] = dataclasses.asdict(config.phy)
    out["solver"] = dataclasses.asdict(config.solver)
    if config.mcs_table_path is not None:
        out["mcs_table"] = config.mcs_table_path
    out["wlans"] = [{
        "name": w.name,
        "ap": [_plain(v) for v in w.ap],
        "stas": [[_plain(v) for v in s] for s in w.stas],
        "channel": [w.allocation.channel.lo, w.allocation.channel.hi],
        "primary": w.allocation.primary,
        "policy": str(w.policy),
    } for w in config.wlans]
    return out


def emit_scenario(config, path=None):
    """Write ``config`` as YAML to ``path`` (or return the text when ``path`` is None)."""
    text = yaml.safe_dump(scenario_to_dict(config), sort_keys=False, default_flow_style=None)
    if path is None:
        return text
    with open(path, "w") as fh:
        fh.write(text)
    return text


def fixture_path(name):
    """Path of a scenario shipped with the package (e.g. ``"scenario_I"``)."""
    here = os.path.join(os.path.dirname(__file__), "data", "scenarios")
    return os.path.join(here, name if name.endswith(".yaml") else name + ".yaml")


def load_fixture(name):
    return parse_scenario(fixture_path(name))
