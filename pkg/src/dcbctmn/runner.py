"""End-to-end evaluation of scenarios, policy sweeps and CSV output.

CSV schema (version 1).  One row per WLAN (``row == "wlan"``) followed by one
``aggregate`` row per evaluated scenario:

    scenario, seed, n_wlans, policy, row, wlan, wlan_policy, throughput_mbps,
    airtime, bandwidth_mhz, n_states, global_states, jain,
    proportional_fairness, starved, error

``policy`` is the dash-joined policy of every WLAN in declaration order.
Aggregate rows carry the summed throughput and bandwidth and the fairness
indices; WLAN rows leave the fairness columns empty.  Failed evaluations in a
sweep produce a single aggregate row with ``error`` filled in.
"""
import csv
import dataclasses
import io
import itertools
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import yaml

from .ctmn import explore
from .deployment import DeploymentSpec, deployment_spec_from_dict, generate_deployment
from .metrics import (ScenarioReport, WlanReport, airtime_and_bandwidth, fairness,
                      sinr_table, solve_equilibrium, throughput)
from .policies import Policy
from .propagation import RadioConfig
from .phy import PhyParams
from .scenario import ScenarioError, SolverOptions, _section, parse_scenario

log = logging.getLogger(__name__)

CSV_VERSION = 1
CSV_COLUMNS = ["scenario", "seed", "n_wlans", "policy", "row", "wlan", "wlan_policy",
               "throughput_mbps", "airtime", "bandwidth_mhz", "n_states", "global_states",
               "jain", "proportional_fairness", "starved", "error"]
WORKERS_ENV = "DCBCTMN_WORKERS"


def evaluate(config, return_ctmn=False):
    """MCS selection, state exploration, stationary solve and metrics."""
    scheme = config.scheme
    ctmn = explore(config.wlans, scheme, config.radio, config.phy, config.mcs_table,
                   config.solver.state_cap)
    st = solve_equilibrium(ctmn.Q, config.solver.dense_threshold, config.solver.tolerance)
    capture = sinr_table(ctmn, config.wlans, config.radio, scheme.n_sys)
    gamma = throughput(st.pi, ctmn, config.wlans, config.radio, config.phy, scheme.n_sys, capture)
    airtime, bw = airtime_and_bandwidth(st.pi, ctmn)
    reports = []
    for x, w in enumerate(config.wlans):
        ok = {ctmn.label(k): float(capture[k, x])
              for k, s in enumerate(ctmn.states) if s[x] is not None}
        reports.append(WlanReport(w.name, float(gamma[x]), float(airtime[x]), float(bw[x]), ok))
    if config.wlans:
        jain, prop, starved = fairness(gamma / 1e6)
        starved = [config.wlans[i].name for i in starved]
    else:
        jain, prop, starved = math.nan, math.nan, []
    diagnostics = [m for link in ctmn.links for m in link.diagnostics]
    report = ScenarioReport(reports, st.pi, len(ctmn), ctmn.global_size, jain, prop,
                            starved, diagnostics)
    return (report, ctmn) if return_ctmn else report


def _fmt(v):
    if v is None or v == "":
        return ""
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return f"{v:.6f}"
    return str(v)


def report_rows(config, report, seed=""):
    base = {"scenario": config.name, "seed": seed, "n_wlans": len(config.wlans),
            "policy": config.policy_label()}
    rows = []
    for w, r in zip(config.wlans, report.wlans):
        rows.append({**base, "row": "wlan", "wlan": w.name, "wlan_policy": str(w.policy),
                     "throughput_mbps": r.throughput_mbps, "airtime": r.airtime,
                     "bandwidth_mhz": r.bandwidth_mhz, "n_states": report.n_states,
                     "global_states": report.global_size})
    if config.wlans:
        rows.append({**base, "row": "aggregate",
                     "throughput_mbps": report.throughput_mbps,
                     "bandwidth_mhz": sum(r.bandwidth_mhz for r in report.wlans),
                     "n_states": report.n_states, "global_states": report.global_size,
                     "jain": report.jain, "proportional_fairness": report.proportional,
                     "starved": ";".join(report.starved)})
    return rows


def error_row(config, message, seed=""):
    return {"scenario": config.name, "seed": seed, "n_wlans": len(config.wlans),
            "policy": config.policy_label(), "row": "aggregate", "error": message}


def write_csv(rows, out=None):
    """Write rows with the schema-v1 header; returns the CSV text when ``out`` is None."""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _fmt(row.get(k, "")) for k in CSV_COLUMNS})
    text = buf.getvalue()
    if out is None:
        return text
    if hasattr(out, "write"):
        out.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    return text


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def run(config, csv_path=None, dump_path=None):
    """Evaluate one scenario; optionally write its CSV and CTMN dump."""
    report, ctmn = evaluate(config, return_ctmn=True)
    rows = report_rows(config, report)
    if csv_path is not None:
        write_csv(rows, csv_path)
    if dump_path is not None:
        with open(dump_path, "w") as fh:
            fh.write(ctmn.dump())
    return report, rows


def policy_combinations(config, policies=tuple(Policy)):
    """Copies of ``config`` for every per-WLAN assignment of ``policies``."""
    return [config.with_policies(combo)
            for combo in itertools.product(policies, repeat=len(config.wlans))]


@dataclass(frozen=True)
class SweepSpec:
    """Grid of evaluations.

    Either ``scenario`` (a scenario file swept over every per-WLAN policy
    combination) or ``deployment`` (random deployments for each ``n_wlans`` x
    ``seeds``, each evaluated once per policy).  With ``sweep_wlan`` set only
    that WLAN's policy is swept and the others keep the deployment policy.
    """

    name: str = "sweep"
    scenario: str | None = None
    deployment: dict = field(default_factory=dict)
    n_wlans: tuple = (2,)
    seeds: tuple = (1,)
    policies: tuple = ("OP", "SCB", "AM", "PU")
    sweep_wlan: str | None = None
    radio: RadioConfig = RadioConfig()
    phy: PhyParams = PhyParams()
    solver: SolverOptions = SolverOptions()


SWEEP_KEYS = {f.name for f in dataclasses.fields(SweepSpec)}


def parse_sweep_spec(path):
    with open(path) as fh:
        data = yaml.safe_load(fh) or {}
    if not isinstance(data, dict):
        raise ScenarioError("<root>", "expected a mapping")
    for key in data:
        if key not in SWEEP_KEYS:
            raise ScenarioError(key, "unknown key")
    kw = dict(data)
    for key, cls in (("radio", RadioConfig), ("phy", PhyParams), ("solver", SolverOptions)):
        kw[key] = _section(cls, data.get(key), key)
    for key in ("n_wlans", "seeds", "policies"):
        if key in kw:
            v = kw[key]
            kw[key] = tuple(v) if isinstance(v, (list, tuple)) else (v,)
    if "policies" in kw and not kw["policies"]:
        raise ScenarioError("policies", "at least one policy is required")
    try:
        kw["policies"] = tuple(str(Policy.parse(p)) for p in kw.get("policies", SweepSpec.policies))
    except ValueError as exc:
        raise ScenarioError("policies", str(exc)) from None
    if kw.get("scenario"):
        kw["scenario"] = os.path.join(os.path.dirname(os.path.abspath(path)), kw["scenario"])
    return SweepSpec(**kw)


def sweep_jobs(spec):
    """Expand a sweep into ``(config, seed)`` jobs (or ``(error_config, seed, message)``)."""
    jobs = []
    if spec.scenario:
        base = parse_scenario(spec.scenario)
        for cfg in policy_combinations(base, spec.policies):
            jobs.append((cfg, ""))
        return jobs
    for m, seed in itertools.product(spec.n_wlans, spec.seeds):
        dep = deployment_spec_from_dict({**spec.deployment, "n_wlans": m, "seed": seed})
        cfg = generate_deployment(dep, spec.radio, spec.phy, spec.solver)
        for p in spec.policies:
            if spec.sweep_wlan:
                pols = [p if w.name == spec.sweep_wlan else w.policy for w in cfg.wlans]
            else:
                pols = p
            jobs.append((cfg.with_policies(pols), seed))
    return jobs


def _evaluate_job(job):
    config, seed = job
    try:
        return report_rows(config, evaluate(config), seed)
    except Exception as exc:  # recorded in the CSV; a sweep never aborts on one scenario
        log.warning("scenario %s failed: %s", config.name, exc)
        return [error_row(config, f"{type(exc).__name__}: {exc}", seed)]


def _sort_key(row):
    seed = row["seed"]
    return (row["n_wlans"], seed if seed != "" else -1, row["scenario"], row["policy"])


def sweep(spec, workers=None):
    """Evaluate every job of ``spec``; rows come back in deterministic order."""
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1"))
    jobs = sweep_jobs(spec)
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_evaluate_job, jobs))
    else:
        results = [_evaluate_job(j) for j in jobs]
    # Stable sort keeps WLAN rows ahead of their aggregate row.
    groups = sorted(results, key=lambda rows: _sort_key(rows[0]))
    return [row for rows in groups for row in rows]


def compare_policies(rows, wlan=None, margin=0.5, first="AM", second="PU"):
    """Count scenarios where ``first`` beats ``second`` by more than ``margin`` Mbps.

    ``rows`` are sweep rows (dicts, e.g. from :func:`read_csv`).  ``wlan``
    selects the WLAN whose throughput is compared; ``None`` compares the
    aggregate.  Scenarios are paired by ``(scenario, seed)`` and by the
    policy of every WLAN other than the compared one.
    """
    table = {}
    for row in rows:
        if row.get("error"):
            continue
        if wlan is None:
            if row["row"] != "aggregate":
                continue
            pol = row["policy"]
            if pol == first or pol == second:
                key, which = (row["scenario"], str(row["seed"])), pol
            elif set(pol.split("-")) <= {first} or set(pol.split("-")) <= {second}:
                key, which = (row["scenario"], str(row["seed"])), pol.split("-")[0]
            else:
                continue
        else:
            if row["row"] != "wlan" or row["wlan"] != wlan:
                continue
            which = row["wlan_policy"]
            if which not in (first, second):
                continue
            names = row["policy"].split("-")
            idx = _wlan_index(rows, row["scenario"], wlan)
            others = tuple(p for i, p in enumerate(names) if i != idx)
            key = (row["scenario"], str(row["seed"]), others)
        table.setdefault(key, {})[which] = float(row["throughput_mbps"])
    counts = {f"{first} best": 0, f"{second} best": 0, "draw": 0}
    for vals in table.values():
        if first not in vals or second not in vals:
            continue
        diff = vals[first] - vals[second]
        if diff > margin:
            counts[f"{first} best"] += 1
        elif -diff > margin:
            counts[f"{second} best"] += 1
        else:
            counts["draw"] += 1
    return counts


def _wlan_index(rows, scenario, wlan):
    names = [r["wlan"] for r in rows if r["scenario"] == scenario and r["row"] == "wlan"]
    seen = list(dict.fromkeys(names))
    return seen.index(wlan)
