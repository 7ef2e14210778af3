"""Seeded random deployments of WLANs on a rectangular map.

Randomness comes from ``numpy.random.Generator`` with the PCG64 bit generator
seeded by ``DeploymentSpec.seed``; the draw order is fixed (all AP positions,
then per WLAN: STA offsets, primary, width, policy), so a seed always yields
the same scenario for a given numpy version.
"""
import dataclasses
import math
from dataclasses import dataclass, field

import numpy as np

from .channels import Allocation, Channel, ChannelizationScheme, ConfigurationError
from .network import Wlan
from .phy import PhyParams
from .policies import Policy
from .propagation import RadioConfig
from .scenario import ScenarioConfig, ScenarioError, SolverOptions


class DeploymentError(RuntimeError):
    """AP placement failed: the map is too dense for the minimum distance."""


@dataclass(frozen=True)
class DeploymentSpec:
    n_wlans: int
    seed: int
    map_width_m: float = 100.0
    map_height_m: float = 100.0
    min_ap_distance_m: float = 10.0
    sta_distance_m: tuple = (1.0, 5.0)
    stas_per_wlan: int = 1
    n_sys: int = 8
    widths: tuple = (1, 2, 4, 8)
    policy: str = "AM"
    policy_overrides: dict = field(default_factory=dict)
    max_attempts: int = 10000

    def __post_init__(self):
        if self.n_wlans < 0:
            raise ConfigurationError("n_wlans must be non-negative")
        if self.seed is None:
            raise ConfigurationError("a seed is required")
        lo, hi = self.sta_distance_m
        if not 0 < lo <= hi:
            raise ConfigurationError("sta_distance_m must satisfy 0 < min <= max")
        if self.stas_per_wlan < 1:
            raise ConfigurationError("stas_per_wlan must be at least 1")
        ChannelizationScheme(self.n_sys)
        if not self.widths or any(w > self.n_sys for w in self.widths):
            raise ConfigurationError("widths must be non-empty and fit in n_sys")
        if str(self.policy).lower() != "random":
            Policy.parse(self.policy)


def wlan_names(n):
    return [f"W{i + 1:02d}" for i in range(n)]


def _place_aps(spec, rng):
    aps = []
    for i in range(spec.n_wlans):
        for _ in range(spec.max_attempts):
            p = rng.uniform((0.0, 0.0), (spec.map_width_m, spec.map_height_m))
            if all(math.dist(p, q) >= spec.min_ap_distance_m for q in aps):
                aps.append(p)
                break
        else:
            raise DeploymentError(
                f"could not place AP {i + 1} of {spec.n_wlans} at least "
                f"{spec.min_ap_distance_m} m from the others in a "
                f"{spec.map_width_m}x{spec.map_height_m} m map after {spec.max_attempts} draws "
                f"({spec.n_wlans / (spec.map_width_m * spec.map_height_m):.4f} APs/m^2)")
    return aps


def generate_deployment(spec, radio=RadioConfig(), phy=PhyParams(), solver=SolverOptions(),
                        name=None):
    """Draw a random scenario.

    APs are uniform on the map subject to the pairwise minimum distance
    (rejection sampling); STAs are at a uniform distance within
    ``sta_distance_m`` and a uniform bearing from their AP; the primary is
    uniform over the basic channels and the allocation width uniform over
    ``widths``, the allocation being the aligned block of that width holding
    the primary.
    """
    rng = np.random.default_rng(spec.seed)
    aps = _place_aps(spec, rng)
    names = wlan_names(spec.n_wlans)
    wlans = []
    lo, hi = spec.sta_distance_m
    for wname, ap in zip(names, aps):
        stas = []
        for _ in range(spec.stas_per_wlan):
            r = rng.uniform(lo, hi)
            theta = rng.uniform(0.0, 2.0 * math.pi)
            stas.append((float(ap[0] + r * math.cos(theta)), float(ap[1] + r * math.sin(theta))))
        primary = int(rng.integers(1, spec.n_sys + 1))
        width = int(spec.widths[rng.integers(len(spec.widths))])
        start = (primary - 1) // width * width + 1
        alloc = Allocation(Channel(start, start + width - 1), primary)
        if str(spec.policy).lower() == "random":
            policy = list(Policy)[rng.integers(len(Policy))]
        else:
            policy = Policy.parse(spec.policy)
        policy = Policy.parse(spec.policy_overrides.get(wname, policy))
        wlans.append(Wlan(wname, (float(ap[0]), float(ap[1])), stas, alloc, policy))
    if name is None:
        name = f"deploy_M{spec.n_wlans}_s{spec.seed}"
    return ScenarioConfig(name, spec.n_sys, tuple(wlans), radio, phy, solver,
                          description=f"random deployment seed={spec.seed}")


SPEC_KEYS = {f.name for f in dataclasses.fields(DeploymentSpec)}


def deployment_spec_from_dict(data, where="deployment"):
    if not isinstance(data, dict):
        raise ScenarioError(where, "expected a mapping")
    for key in data:
        if key not in SPEC_KEYS:
            raise ScenarioError(f"{where}.{key}", "unknown parameter")
    kwargs = dict(data)
    for key in ("sta_distance_m", "widths"):
        if key in kwargs:
            kwargs[key] = tuple(kwargs[key])
    try:
        return DeploymentSpec(**kwargs)
    except (ConfigurationError, TypeError, ValueError) as exc:
        raise ScenarioError(where, str(exc)) from None
