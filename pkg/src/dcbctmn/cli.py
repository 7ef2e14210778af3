"""Command-line entry point.

Verbs: ``run``, ``sweep``, ``generate``, ``dump-ctmn`` and ``compare``.
Exit codes: 0 on success, 1 on invalid input, 2 on a runtime failure.
"""
import argparse
import dataclasses
import logging
import sys

import yaml

from . import runner
from .channels import ConfigurationError
from .ctmn import StateSpaceError, explore
from .deployment import DeploymentError, deployment_spec_from_dict, generate_deployment
from .metrics import ReducibleChainError
from .phy import PhyParams
from .propagation import RadioConfig
from .scenario import ScenarioError, SolverOptions, _section, emit_scenario, parse_scenario

log = logging.getLogger("dcbctmn")

EXIT_OK, EXIT_INVALID, EXIT_RUNTIME = 0, 1, 2


def _apply_solver_flags(config, args):
    changes = {}
    if getattr(args, "state_cap", None) is not None:
        changes["state_cap"] = args.state_cap
    if getattr(args, "tol", None) is not None:
        changes["tolerance"] = args.tol
    if not changes:
        return config
    return dataclasses.replace(config, solver=dataclasses.replace(config.solver, **changes))


def _out(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def cmd_run(args):
    config = _apply_solver_flags(parse_scenario(args.scenario), args)
    report, rows = runner.run(config, dump_path=args.dump)
    _out(runner.write_csv(rows), args.output)
    for msg in report.diagnostics:
        log.warning("%s", msg)
    return EXIT_OK


def cmd_sweep(args):
    spec = runner.parse_sweep_spec(args.spec)
    if args.state_cap is not None or args.tol is not None:
        solver = dataclasses.replace(
            spec.solver,
            **({"state_cap": args.state_cap} if args.state_cap is not None else {}),
            **({"tolerance": args.tol} if args.tol is not None else {}))
        spec = dataclasses.replace(spec, solver=solver)
    rows = runner.sweep(spec, workers=args.workers)
    _out(runner.write_csv(rows), args.output)
    failed = sum(1 for r in rows if r.get("error"))
    if failed:
        log.warning("%d scenario(s) failed; see the error column", failed)
    return EXIT_OK


GENERATE_KEYS = {"name", "deployment", "radio", "phy", "solver"}


def cmd_generate(args):
    with open(args.spec) as fh:
        data = yaml.safe_load(fh) or {}
    if not isinstance(data, dict):
        raise ScenarioError("<root>", "expected a mapping")
    for key in data:
        if key not in GENERATE_KEYS:
            raise ScenarioError(key, "unknown key")
    dep = dict(data.get("deployment") or {})
    if args.seed is not None:
        dep["seed"] = args.seed
    spec = deployment_spec_from_dict(dep)
    config = generate_deployment(spec, _section(RadioConfig, data.get("radio"), "radio"),
                                 _section(PhyParams, data.get("phy"), "phy"),
                                 _section(SolverOptions, data.get("solver"), "solver"),
                                 data.get("name"))
    _out(emit_scenario(config), args.output)
    return EXIT_OK


def cmd_dump(args):
    config = _apply_solver_flags(parse_scenario(args.scenario), args)
    ctmn = explore(config.wlans, config.scheme, config.radio, config.phy, config.mcs_table,
                   config.solver.state_cap)
    _out(ctmn.dump(), args.output)
    return EXIT_OK


def cmd_compare(args):
    rows = runner.read_csv(args.csv)
    counts = runner.compare_policies(rows, wlan=args.wlan, margin=args.margin,
                                     first=args.first, second=args.second)
    total = sum(counts.values())
    lines = [f"{k}: {v}" + (f" ({100.0 * v / total:.1f}%)" if total else "")
             for k, v in counts.items()]
    _out("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="dcbctmn", description="Dynamic channel bonding CTMN analysis")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = p.add_subparsers(dest="command", required=True)

    def solver_flags(sp):
        sp.add_argument("--state-cap", type=int, help="abort if the state space exceeds this")
        sp.add_argument("--tol", type=float, help="relative residual tolerance of the solve")

    sp = sub.add_parser("run", help="evaluate one scenario file")
    sp.add_argument("scenario")
    sp.add_argument("-o", "--output", help="CSV path (default stdout)")
    sp.add_argument("--dump", help="also write the CTMN dump to this path")
    solver_flags(sp)
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("sweep", help="evaluate a deployment or policy grid")
    sp.add_argument("spec")
    sp.add_argument("-o", "--output", help="CSV path (default stdout)")
    sp.add_argument("-j", "--workers", type=int,
                    help=f"parallel workers (default ${runner.WORKERS_ENV} or 1)")
    solver_flags(sp)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("generate", help="draw a random deployment as a scenario file")
    sp.add_argument("spec")
    sp.add_argument("-o", "--output", help="scenario path (default stdout)")
    sp.add_argument("--seed", type=int, help="override the seed in the deployment file")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("dump-ctmn", help="print the feasible states and transitions")
    sp.add_argument("scenario")
    sp.add_argument("-o", "--output", help="dump path (default stdout)")
    solver_flags(sp)
    sp.set_defaults(func=cmd_dump)

    sp = sub.add_parser("compare", help="classify paired AM/PU rows of a sweep CSV")
    sp.add_argument("csv")
    sp.add_argument("--wlan", help="compare this WLAN instead of the aggregate")
    sp.add_argument("--margin", type=float, default=0.5, help="draw margin in Mbps")
    sp.add_argument("--first", default="AM")
    sp.add_argument("--second", default="PU")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_compare)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ScenarioError, ConfigurationError, DeploymentError, yaml.YAMLError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (StateSpaceError, ReducibleChainError, ArithmeticError, RuntimeError) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except ValueError as exc:  # link budget and geometry errors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID

if __name__ == "__main__":
    sys.exit(main())
