"""Command-line front end: analyze, simulate, invade, sweep, verify.

Exit codes: 0 success, 1 bad input, 2 a cycle could not be classified
(``analyze``), 3 an oracle check failed (``verify``).  Every flag can also be
set through an environment variable ``JUNGLE_<FLAG>`` (for example
``JUNGLE_TMAX=500``); explicit flags win.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import itertools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import simulate as sim
from .core_model import (
    PARAM_NAMES,
    REFERENCE_IC,
    REFERENCE_PARAMS,
    InteractionParams,
    PreconditionError,
    as_state,
    check_invariant_sphere,
)
from .invasion import (
    PredictionError,
    ScenarioError,
    build_scenario,
    predict_outcome,
    scenario_from_dict,
    simulated_survivors,
    weakest_prey_rule,
)
from .oracles import CHECKS, run_suite
from .stability import Classification, classify_network, network_stability, stability_report

SCHEMA = "1"
DEFAULT_MAX_POINTS = 10**6

EXIT_OK, EXIT_BAD_INPUT, EXIT_UNCLASSIFIED, EXIT_CHECK_FAILED = 0, 1, 2, 3


class InputError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    """Usage errors exit 1 so that 2 stays reserved for unclassified cycles."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_BAD_INPUT, f"{self.prog}: error: {message}\n")


def _env(name: str, default=None):
    return os.environ.get(f"JUNGLE_{name}", default)


def parse_ic(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(v) for v in text.split(","))
    except ValueError as exc:
        raise InputError(f"bad initial condition {text!r}") from exc
    as_state(values)
    return values


def parse_grid(spec: str) -> list[tuple[str, list[float]]]:
    """``name=value`` or ``name=start:stop:num`` entries, comma separated."""
    axes = []
    for entry in filter(None, (s.strip() for s in spec.split(","))):
        name, sep, rhs = entry.partition("=")
        name = name.strip()
        if not sep or name not in PARAM_NAMES:
            raise InputError(f"bad grid entry {entry!r}; expected NAME=VALUE or NAME=START:STOP:NUM")
        if any(name == a for a, _ in axes):
            raise InputError(f"parameter {name} appears twice in the grid")
        parts = rhs.split(":")
        try:
            if len(parts) == 1:
                values = [float(parts[0])]
            elif len(parts) == 3:
                start, stop, num = float(parts[0]), float(parts[1]), int(parts[2])
                if num < 0 or start > stop:
                    raise InputError(f"grid axis {name}: need start <= stop and num >= 0")
                values = np.linspace(start, stop, num).tolist()
            else:
                raise InputError(f"bad grid entry {entry!r}")
        except ValueError as exc:
            raise InputError(f"bad grid entry {entry!r}") from exc
        if any(not v > 0 for v in values):
            raise InputError(f"grid axis {name} has nonpositive values")
        axes.append((name, values))
    return axes


def config_hash(config: dict) -> str:
    blob = json.dumps(config, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def _load_params(args) -> InteractionParams:
    if args.params:
        try:
            return InteractionParams.from_json(args.params)
        except FileNotFoundError as exc:
            raise InputError(f"parameter file not found: {args.params}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON in {args.params}: {exc}") from exc
    return REFERENCE_PARAMS


def _emit(payload: bytes, out: str | None, name: str) -> None:
    if out:
        path = Path(out)
        path.mkdir(parents=True, exist_ok=True)
        (path / name).write_bytes(payload)
    else:
        sys.stdout.write(payload.decode())


# -- subcommands ------------------------------------------------------------


def cmd_analyze(args) -> int:
    p = _load_params(args)
    config = {"command": "analyze", "params": p.to_dict(), "seed": args.seed, "samples": args.samples}
    h = config_hash(config)
    report = stability_report(p)
    sphere = check_invariant_sphere(p, args.samples, args.seed)
    doc = {
        "schema": SCHEMA,
        "config_hash": h,
        "config": config,
        "params": p.to_dict(),
        "invariant_sphere": {
            "holds": sphere.holds,
            "hypothesis": sphere.hypothesis,
            "n_samples": sphere.n_samples,
            "max_value": sphere.max_value,
            "witness": list(sphere.witness) if sphere.witness else None,
            "seed": sphere.seed,
        },
        **report,
    }
    _emit(sim.to_json_bytes(doc), args.out, "analysis.json")
    unclassified = [c for c in report["cycles"] if c["class"] == Classification.UNCLASSIFIED.value]
    if unclassified:
        for c in unclassified:
            print(f"cycle {c['id']} unclassified: {'; '.join(c['reasons'])}", file=sys.stderr)
        return EXIT_UNCLASSIFIED
    return EXIT_OK


def cmd_simulate(args) -> int:
    p = _load_params(args)
    ic = parse_ic(args.ic) if args.ic else REFERENCE_IC
    config = {"command": "simulate", "params": p.to_dict(), "ic": list(ic), "tmax": args.tmax,
              "rtol": args.rtol, "atol": args.atol, "max_gap": args.max_gap, "seed": args.seed}
    h = config_hash(config)
    res = sim.run(p, ic, args.tmax, args.rtol, args.atol, max_gap=args.max_gap)
    out = Path(args.out or "out")
    out.mkdir(parents=True, exist_ok=True)
    (out / "trajectory.csv").write_bytes(
        sim.trajectory_csv(res.trajectory, comment=f"schema={SCHEMA} config_hash={h}"))
    (out / "itinerary.json").write_bytes(sim.itinerary_json(
        res.itinerary, {"schema": SCHEMA, "config_hash": h,
                        "dwell_ratios": {str(k): v for k, v in sim.dwell_growth(res.itinerary).items()}}))
    (out / "run.json").write_bytes(sim.to_json_bytes({
        "schema": SCHEMA,
        "config_hash": h,
        "config": config,
        "integrator": res.trajectory.meta,
        "extinct": sorted(res.extinct),
        "tail_word": list(res.tail_word) if res.tail_word else None,
        "summary": res.summary(),
    }))
    print(res.summary())
    return EXIT_OK


def cmd_invade(args) -> int:
    if args.scenario:
        try:
            with open(args.scenario) as fh:
                data = json.load(fh)
        except FileNotFoundError as exc:
            raise InputError(f"scenario file not found: {args.scenario}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON in {args.scenario}: {exc}") from exc
        scn = scenario_from_dict(data)
    elif args.alien:
        scn = build_scenario(args.alien, params=_load_params(args))
    else:
        raise InputError("give --scenario FILE or --alien weak|strong")
    p = scn.params or _load_params(args)
    config = {"command": "invade", "scenario": scn.to_dict(), "params": p.to_dict(),
              "simulate": args.simulate, "tmax": args.tmax, "seed": args.seed}
    pred = predict_outcome(scn, p)
    doc = {"schema": SCHEMA, "config_hash": config_hash(config), "scenario": scn.to_dict(),
           "params": p.to_dict(), "prediction": pred.to_dict()}
    if scn.strength == "strong":
        doc["weakest_prey_rule"] = weakest_prey_rule(scn)
    if args.simulate:
        survivors = simulated_survivors(scn, p, t_max=args.tmax, rel_tol=args.rtol, abs_tol=args.atol)
        doc["simulation"] = {"survivors": list(survivors),
                             "agrees": set(survivors) == set(pred.survivors)}
    _emit(sim.to_json_bytes(doc), args.out, "invasion.json")
    return EXIT_OK


SWEEP_COLUMNS = (
    *PARAM_NAMES, "assumptions", "sufficient_condition", "network_stable",
    "rho_142", "rho_143", "rho_1432", "class_142", "class_143", "class_1432",
)


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def sweep_row(values: tuple[float, ...], simulate_opts: dict | None = None) -> list[str]:
    p = InteractionParams(**dict(zip(PARAM_NAMES, values)))
    net = network_stability(p)
    classes = classify_network(p)
    row = [*values, p.standing_assumptions, net.sufficient_condition, net.asymptotically_stable,
           *(net.rho_products[c] for c in ("142", "143", "1432")),
           *(classes[c].classification.value for c in ("142", "143", "1432"))]
    if simulate_opts is not None:
        try:
            res = sim.run(p, simulate_opts["ic"], simulate_opts["tmax"], simulate_opts["rtol"], simulate_opts["atol"])
            row.append("".join(str(n) for n in res.tail_word) if res.tail_word else "none")
        except sim.IntegrationError:
            row.append("failed")
    return [_fmt(v) for v in row]


def _sweep_row_star(task):
    return sweep_row(*task)


def grid_points(base: InteractionParams, axes) -> tuple[int, itertools.product]:
    n = int(np.prod([len(v) for _, v in axes])) if axes else 1
    names = [a for a, _ in axes]
    base_d = base.to_dict()

    def points():
        for combo in itertools.product(*(v for _, v in axes)):
            d = {**base_d, **dict(zip(names, combo))}
            yield tuple(d[k] for k in PARAM_NAMES)

    return n, points()


def cmd_sweep(args) -> int:
    base = _load_params(args)
    axes = parse_grid(args.grid or "")
    n, points = grid_points(base, axes)
    if n > args.max_points:
        raise InputError(f"grid has {n} points, above the cap of {args.max_points}")
    sim_opts = None
    if args.simulate:
        ic = parse_ic(args.ic) if args.ic else REFERENCE_IC
        sim_opts = {"ic": ic, "tmax": args.tmax, "rtol": args.rtol, "atol": args.atol}
    config = {"command": "sweep", "base": base.to_dict(), "grid": [[a, v] for a, v in axes],
              "simulate": sim_opts and {**sim_opts, "ic": list(sim_opts["ic"])}, "seed": args.seed}
    h = config_hash(config)
    tasks = ((pt, sim_opts) for pt in points)
    jobs = args.jobs or os.cpu_count() or 1
    if jobs > 1 and n > 64:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_row_star, tasks, chunksize=max(1, n // (4 * jobs))))
    else:
        rows = [_sweep_row_star(t) for t in tasks]
    buf = io.StringIO()
    buf.write(f"# schema={SCHEMA} config_hash={h}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([*SWEEP_COLUMNS, *(["tail_word"] if sim_opts else [])])
    writer.writerows(rows)
    _emit(buf.getvalue().encode(), args.out, "sweep.csv")
    return EXIT_OK


def cmd_verify(args) -> int:
    p = _load_params(args)
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    if not checks:
        raise InputError(f"no checks selected; choose from {CHECKS}")
    try:
        results = run_suite(checks, p, args.draws, args.seed, args.perturb)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    config = {"command": "verify", "params": p.to_dict(), "checks": checks, "draws": args.draws,
              "seed": args.seed, "perturb": args.perturb}
    doc = {"schema": SCHEMA, "config_hash": config_hash(config), "config": config,
           "results": [r.to_dict() for r in results], "passed": all(r.passed for r in results)}
    _emit(sim.to_json_bytes(doc), args.out, "verify.json")
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.n_checks} checks, max error {r.max_error:.3e}",
              file=sys.stderr)
    return EXIT_OK if doc["passed"] else EXIT_CHECK_FAILED


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--params", default=_env("PARAMS"), help="JSON file with e_A, e_B, e_D, c_A, c_B, c_D")
    common.add_argument("--seed", type=int, default=_env("SEED", "0"))
    common.add_argument("--out", default=_env("OUT"),
                        help="output directory (stdout if omitted; simulate defaults to ./out)")

    integ = _Parser(add_help=False)
    integ.add_argument("--ic", default=_env("IC"), help='initial condition "x1,x2,x3,x4"')
    integ.add_argument("--tmax", type=float, default=_env("TMAX", str(sim.DEFAULT_TMAX)))
    integ.add_argument("--rtol", type=float, default=_env("RTOL", str(sim.DEFAULT_RTOL)))
    integ.add_argument("--atol", type=float, default=_env("ATOL", str(sim.DEFAULT_ATOL)))

    parser = _Parser(prog="junglegame", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="classify cycles and network stability")
    a.add_argument("--samples", type=int, default=_env("SAMPLES", "10000"))
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("simulate", parents=[common, integ], help="integrate one trajectory")
    s.add_argument("--max-gap", type=float, default=_env("MAX_GAP", str(sim.DEFAULT_MAX_GAP)))
    s.set_defaults(func=cmd_simulate)

    i = sub.add_parser("invade", parents=[common, integ], help="predict an alien invasion outcome")
    i.add_argument("--scenario", default=_env("SCENARIO"), help='JSON {"alien": "weak"|"strong", "params": {...}}')
    i.add_argument("--alien", choices=("weak", "strong"))
    i.add_argument("--simulate", action="store_true", help="cross-check with a simulation")
    i.set_defaults(func=cmd_invade)

    w = sub.add_parser("sweep", parents=[common, integ], help="classify a parameter grid")
    w.add_argument("--grid", default=_env("GRID"), help="NAME=START:STOP:NUM or NAME=VALUE, comma separated")
    w.add_argument("--max-points", type=int, default=_env("MAX_POINTS", str(DEFAULT_MAX_POINTS)))
    w.add_argument("--jobs", type=int, default=_env("JOBS", "0"), help="worker processes (0: all cores)")
    w.add_argument("--simulate", action="store_true", help="add a simulated tail-word column")
    w.set_defaults(func=cmd_sweep)

    v = sub.add_parser("verify", parents=[common], help="run the oracle suite")
    v.add_argument("--checks", default=_env("CHECKS", ",".join(CHECKS)))
    v.add_argument("--draws", type=int, default=_env("DRAWS", "100"))
    v.add_argument("--perturb", type=float, default=_env("PERTURB", "0"),
                   help="add this to one analytic eigenvalue (fault injection)")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, PreconditionError, ScenarioError, PredictionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except sim.IntegrationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
