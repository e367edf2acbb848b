"""High-level runs from validated configs, shared by the CLI and the HTTP API.

Both front ends serialize the dicts returned here with ``canonical_json``, so
a config plus a seed maps to byte-identical output no matter which surface
launched the run.
"""

from __future__ import annotations

import json
from typing import Callable

from .calibrate import calibrate
from .config import ValidatedConfig
from .decision import DesignParams
from .report import decision_table_binary, protocol_summary, render_oc_table
from .simulate import estimate_oc, trial_results

__all__ = [
    "canonical_json",
    "parse_design_params",
    "run_calibration",
    "run_simulation",
    "run_decision_table",
]

_SCENARIO_TAG = 21


def canonical_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def parse_design_params(raw: dict) -> DesignParams:
    """Accept either bare threshold fields or a calibration result payload."""
    if "params" in raw and isinstance(raw["params"], dict):
        raw = raw["params"]
    if "result" in raw and isinstance(raw["result"], dict):  # full calibration file
        raw = raw["result"].get("params", raw)
    try:
        return DesignParams(
            lam_lrv=float(raw["lambda_lrv"]),
            lam_cmv=float(raw["lambda_cmv"]),
            gam_lrv=float(raw.get("gamma_lrv", 0.0)),
            gam_cmv=float(raw.get("gamma_cmv", 0.0)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"design parameters file is not usable: {exc}") from exc


def run_calibration(
    cfg: ValidatedConfig, progress: Callable[[float], None] | None = None
) -> dict:
    """Calibrate per the config; returns the full result payload."""
    result = calibrate(
        cfg.plan,
        cfg.prior,
        cfg.profile,
        constraints=cfg.constraints,
        objective=cfg.objective,
        grid=cfg.grid,
        n_sims=cfg.n_sims,
        seed=cfg.seed,
        scenarios=cfg.calibration_scenarios,
        draws=cfg.draws,
        progress=progress,
    )
    payload = {
        "config": cfg.echo,
        "result": result.to_dict(),
        "protocol": protocol_summary(result, cfg.plan, cfg.profile),
    }
    if (
        cfg.plan.arms == 1
        and cfg.plan.endpoint.family == "binary"
        and not cfg.plan.allow_superiority
    ):
        table = decision_table_binary(result.params, cfg.plan, cfg.prior, cfg.profile)
        payload["decision_table"] = {
            "looks": list(table.looks),
            "stop_bounds": list(table.stop_bounds),
            "go_bound": table.go_bound,
            "consider_range": list(table.consider_range) if table.consider_range else None,
        }
    return payload


def run_simulation(
    cfg: ValidatedConfig,
    design: DesignParams,
    progress: Callable[[float], None] | None = None,
    with_trials: bool = False,
) -> dict:
    """Estimate OC for every configured scenario under an explicit design."""
    if not cfg.scenarios:
        raise ValueError("config has no scenarios to simulate")
    rows = []
    trial_rows: list[dict] = []
    for i, scenario in enumerate(cfg.scenarios):
        seed = (cfg.seed, _SCENARIO_TAG, i)
        oc = estimate_oc(
            scenario, design, cfg.plan, cfg.prior, cfg.profile,
            cfg.n_sims, seed, draws=cfg.draws,
        )
        rows.append((scenario, oc))
        if with_trials:
            for tid, tr in enumerate(
                trial_results(
                    scenario, design, cfg.plan, cfg.prior, cfg.profile,
                    cfg.n_sims, seed, draws=cfg.draws,
                )
            ):
                trial_rows.append(
                    {
                        "scenario": scenario.label,
                        "trial_id": tid,
                        "decision": tr.decision.value,
                        "stopped_at": tr.stopped_at_look,
                        "n_used": tr.n_used,
                        "duration": tr.duration_months,
                    }
                )
        if progress is not None:
            progress((i + 1) / len(cfg.scenarios))
    table = render_oc_table(rows, cfg.plan, cfg.profile, design_label=cfg.objective)
    payload = {
        "config": cfg.echo,
        "design": {
            "lambda_lrv": design.lam_lrv,
            "lambda_cmv": design.lam_cmv,
            "gamma_lrv": design.gam_lrv,
            "gamma_cmv": design.gam_cmv,
        },
        "oc_table": table.to_json_obj(),
        "oc_csv": table.to_csv(),
        "oc_raw": [
            {"scenario": sc.label, **oc.to_dict()} for sc, oc in rows
        ],
    }
    if with_trials:
        payload["trials"] = trial_rows
    return payload


def run_decision_table(cfg: ValidatedConfig, design: DesignParams) -> dict:
    table = decision_table_binary(design, cfg.plan, cfg.prior, cfg.profile)
    return {
        "config": cfg.echo,
        "design": {
            "lambda_lrv": design.lam_lrv,
            "lambda_cmv": design.lam_cmv,
            "gamma_lrv": design.gam_lrv,
            "gamma_cmv": design.gam_cmv,
        },
        "decision_table": {
            "looks": list(table.looks),
            "stop_bounds": list(table.stop_bounds),
            "go_bound": table.go_bound,
            "consider_range": list(table.consider_range) if table.consider_range else None,
        },
    }
