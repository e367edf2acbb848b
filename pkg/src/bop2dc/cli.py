"""Command-line interface: calibrate, simulate, decision-table, serve.

Exit codes: 0 success (calibrate: feasible design found), 2 calibration grid
infeasible (results still written), 1 bad config or usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .config import ConfigError, ValidatedConfig, validate_config
from .engine import (
    canonical_json,
    parse_design_params,
    run_calibration,
    run_decision_table,
    run_simulation,
)

_GRID_KEYS = {
    "lambda": ("lambda_lrv", "lambda_cmv"),
    "gamma": ("gamma_lrv", "gamma_cmv"),
    "lambda_lrv": ("lambda_lrv",),
    "lambda_cmv": ("lambda_cmv",),
    "gamma_lrv": ("gamma_lrv",),
    "gamma_cmv": ("gamma_cmv",),
}


def _fail_config(errors: list[dict]) -> int:
    for e in errors:
        path = e["path"] or "(top level)"
        print(f"config error: {path}: {e['message']}", file=sys.stderr)
    return 1


def _load_json(path: str, what: str) -> dict | None:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        print(f"cannot read {what} {path}: {exc}", file=sys.stderr)
    except json.JSONDecodeError as exc:
        print(f"{what} {path} is not valid JSON: line {exc.lineno}: {exc.msg}", file=sys.stderr)
    return None


def _validated(path: str, overrides: dict) -> ValidatedConfig | None:
    raw = _load_json(path, "config")
    if raw is None:
        return None
    if overrides and isinstance(raw, dict):
        sim = dict(raw.get("simulation", {}))
        if overrides.get("sims") is not None:
            sim["n_sims"] = overrides["sims"]
        if overrides.get("seed") is not None:
            sim["seed"] = overrides["seed"]
        if sim:
            raw["simulation"] = sim
        if overrides.get("objective") is not None:
            raw["objective"] = overrides["objective"]
        for key, step in overrides.get("grid_steps", []):
            grid = dict(raw.get("grid", {}))
            defaults = {
                "lambda_lrv": [0.50, 0.99, 0.01],
                "lambda_cmv": [0.01, 0.50, 0.01],
                "gamma_lrv": [0.0, 1.0, 0.1],
                "gamma_cmv": [0.0, 1.0, 0.1],
            }
            for axis in _GRID_KEYS[key]:
                lo, hi, _ = grid.get(axis, defaults[axis])
                grid[axis] = [lo, hi, step]
            raw["grid"] = grid
    try:
        return validate_config(raw)
    except ConfigError as exc:
        _fail_config(exc.errors)
        return None


def _parse_grid_steps(values: list[str]) -> list[tuple[str, float]]:
    steps = []
    for item in values:
        key, _, val = item.partition("=")
        if key not in _GRID_KEYS:
            raise argparse.ArgumentTypeError(
                f"unknown grid axis {key!r}; choose from {sorted(_GRID_KEYS)}"
            )
        try:
            step = float(val)
        except ValueError:
            raise argparse.ArgumentTypeError(f"grid step {val!r} is not a number") from None
        if step <= 0:
            raise argparse.ArgumentTypeError("grid steps must be positive")
        steps.append((key, step))
    return steps


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _cmd_calibrate(args: argparse.Namespace) -> int:
    try:
        grid_steps = _parse_grid_steps(args.grid_step or [])
    except argparse.ArgumentTypeError as exc:
        print(f"config error: grid: {exc}", file=sys.stderr)
        return 1
    cfg = _validated(
        args.config,
        {"sims": args.sims, "seed": args.seed, "objective": args.objective, "grid_steps": grid_steps},
    )
    if cfg is None:
        return 1
    payload = run_calibration(cfg)
    out = Path(args.out)
    _write(out / "calibration.json", canonical_json(payload))
    _write(out / "protocol.md", payload["protocol"])
    feasible = payload["result"]["feasible"]
    print(
        f"calibration {'feasible' if feasible else 'INFEASIBLE'}: "
        f"wrote {out / 'calibration.json'} and {out / 'protocol.md'}"
    )
    return 0 if feasible else 2


def _design_from_file(path: str):
    raw = _load_json(path, "design parameters")
    if raw is None:
        return None
    try:
        return parse_design_params(raw)
    except ValueError as exc:
        print(f"config error: design: {exc}", file=sys.stderr)
        return None


def _cmd_simulate(args: argparse.Namespace) -> int:
    cfg = _validated(args.config, {"sims": args.sims, "seed": args.seed})
    if cfg is None:
        return 1
    design = _design_from_file(args.design)
    if design is None:
        return 1
    try:
        payload = run_simulation(cfg, design, with_trials=bool(args.trials_csv))
    except ValueError as exc:
        print(f"config error: scenarios: {exc}", file=sys.stderr)
        return 1
    out = Path(args.out)
    _write(out / "oc.json", canonical_json(payload))
    _write(out / "oc.csv", payload["oc_csv"])
    if args.trials_csv:
        lines = ["scenario,trial_id,decision,stopped_at,n_used,duration"]
        for row in payload["trials"]:
            duration = "" if row["duration"] is None else repr(row["duration"])
            lines.append(
                f"{row['scenario']},{row['trial_id']},{row['decision']},"
                f"{row['stopped_at']},{row['n_used']},{duration}"
            )
        _write(out / "trials.csv", "\r\n".join(lines) + "\r\n")
    print(f"simulation done: wrote {out / 'oc.json'} and {out / 'oc.csv'}")
    return 0


def _cmd_decision_table(args: argparse.Namespace) -> int:
    cfg = _validated(args.config, {})
    if cfg is None:
        return 1
    design = _design_from_file(args.design)
    if design is None:
        return 1
    try:
        payload = run_decision_table(cfg, design)
    except ValueError as exc:
        print(f"config error: endpoint: {exc}", file=sys.stderr)
        return 1
    _write(Path(args.out), canonical_json(payload))
    print(f"wrote {args.out}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    port = args.port if args.port is not None else int(os.environ.get("BOP2DC_PORT", "8080"))
    uvicorn.run(create_app(max_workers=args.pool), host=args.host, port=port)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="bop2dc",
        description="Dual-criterion go/consider/no-go trial design calibration and simulation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("calibrate", help="grid-search the decision thresholds")
    p.add_argument("config", help="design config JSON")
    p.add_argument("--objective", choices=["optimal", "minN"], default=None)
    p.add_argument("--sims", type=int, default=None, help="simulated trials per scenario")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument(
        "--grid-step",
        action="append",
        metavar="AXIS=STEP",
        help="override a grid step, e.g. lambda=0.02 or gamma_lrv=0.25 (repeatable)",
    )
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_calibrate)

    p = sub.add_parser("simulate", help="operating characteristics for a fixed design")
    p.add_argument("config", help="design config JSON with a scenarios list")
    p.add_argument("--design", required=True, help="design parameters JSON")
    p.add_argument("--sims", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--trials-csv", action="store_true", help="also export per-trial rows")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("decision-table", help="responder-count boundaries for a binary design")
    p.add_argument("config")
    p.add_argument("--design", required=True)
    p.add_argument("--out", required=True, help="output JSON file")
    p.set_defaults(func=_cmd_decision_table)

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--port", type=int, default=None, help="default: $BOP2DC_PORT or 8080")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--pool", type=int, default=None, help="job worker pool size")
    p.set_defaults(func=_cmd_serve)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
