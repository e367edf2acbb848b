"""JSON design-config validation.

Configs are strict: unknown fields are rejected so a typo cannot silently
change a scientific setting, and every default the engine applies is written
back into the validated echo, which makes any run reproducible from the echo
alone (validating the echo is a fixed point).
"""

from __future__ import annotations

import copy
from dataclasses import dataclass

from .calibrate import ConstraintSet, GridSpec
from .decision import TargetProfile
from .posterior import (
    BinaryPrior,
    CategoricalPrior,
    ContinuousPrior,
    TimeToEventPrior,
)
from .simulate import (
    BinaryTruth,
    CategoricalTruth,
    ContinuousTruth,
    EndpointSpec,
    Prior,
    Scenario,
    TimeToEventTruth,
    TrialPlan,
    binary_endpoint,
    continuous_endpoint,
    tte_endpoint,
    two_binary_endpoints,
)

__all__ = ["ConfigError", "ValidatedConfig", "validate_config"]

_FAMILIES = ("binary", "continuous", "time_to_event", "multiple", "coprimary")

_DEFAULT_NAMES = {
    "binary": "response",
    "continuous": "mean outcome",
    "time_to_event": "median survival",
}


class ConfigError(ValueError):
    """Carries machine-readable field errors: [{"path": ..., "message": ...}]."""

    def __init__(self, errors: list[dict]):
        self.errors = errors
        super().__init__("; ".join(f"{e['path']}: {e['message']}" for e in errors))


@dataclass(frozen=True)
class ValidatedConfig:
    """Typed engine inputs plus the fully defaulted config echo."""

    echo: dict
    plan: TrialPlan
    prior: Prior
    profile: TargetProfile
    constraints: ConstraintSet
    objective: str
    grid: GridSpec
    n_sims: int
    seed: int
    draws: int
    calibration_scenarios: tuple[Scenario, Scenario] | None
    scenarios: list[Scenario]


class _Check:
    def __init__(self):
        self.errors: list[dict] = []

    def fail(self, path: str, message: str) -> None:
        self.errors.append({"path": path, "message": message})

    def obj(self, value, path: str, required: dict, optional: dict) -> dict | None:
        """Validate a JSON object's key set; returns the dict or None on failure."""
        if not isinstance(value, dict):
            self.fail(path, "expected an object")
            return None
        for key in value:
            if key not in required and key not in optional:
                self.fail(f"{path}.{key}" if path else key, "unknown field")
        missing = [k for k in required if k not in value]
        for k in missing:
            self.fail(f"{path}.{k}" if path else k, "required field is missing")
        return None if missing else value

    def number(self, value, path: str, lo=None, hi=None, strict_lo=False) -> float | None:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            self.fail(path, "expected a number")
            return None
        v = float(value)
        if lo is not None and (v <= lo if strict_lo else v < lo):
            self.fail(path, f"must be {'greater than' if strict_lo else 'at least'} {lo}")
            return None
        if hi is not None and v > hi:
            self.fail(path, f"must be at most {hi}")
            return None
        return v

    def integer(self, value, path: str, lo=None) -> int | None:
        if isinstance(value, bool) or not isinstance(value, int):
            self.fail(path, "expected an integer")
            return None
        if lo is not None and value < lo:
            self.fail(path, f"must be at least {lo}")
            return None
        return value

    def boolean(self, value, path: str) -> bool | None:
        if not isinstance(value, bool):
            self.fail(path, "expected true or false")
            return None
        return value

    def string(self, value, path: str, choices=None) -> str | None:
        if not isinstance(value, str):
            self.fail(path, "expected a string")
            return None
        if choices is not None and value not in choices:
            self.fail(path, f"must be one of {list(choices)}")
            return None
        return value


def _numbers_list(chk: _Check, value, path: str, length: int | None = None) -> list[float] | None:
    if not isinstance(value, list):
        chk.fail(path, "expected a list of numbers")
        return None
    out = []
    for i, v in enumerate(value):
        n = chk.number(v, f"{path}[{i}]")
        if n is None:
            return None
        out.append(n)
    if length is not None and len(out) != length:
        chk.fail(path, f"expected exactly {length} values")
        return None
    return out


def _endpoint_spec(chk: _Check, raw: dict) -> tuple[EndpointSpec | None, dict | None, str | None]:
    """Returns (spec, echo, family) or Nones on failure."""
    val = chk.obj(
        raw,
        "endpoint",
        required={"family": 1},
        optional={"name": 1, "lower_is_better": 1, "components": 1},
    )
    if val is None:
        return None, None, None
    family = chk.string(val.get("family"), "endpoint.family", choices=_FAMILIES)
    if family is None:
        return None, None, None

    if family in ("binary", "continuous", "time_to_event"):
        if "components" in val:
            chk.fail("endpoint.components", "only multiple/coprimary endpoints take components")
            return None, None, None
        name = val.get("name", _DEFAULT_NAMES[family])
        if chk.string(name, "endpoint.name") is None:
            return None, None, None
        lower = val.get("lower_is_better", False)
        if chk.boolean(lower, "endpoint.lower_is_better") is None:
            return None, None, None
        maker = {
            "binary": binary_endpoint,
            "continuous": continuous_endpoint,
            "time_to_event": tte_endpoint,
        }[family]
        echo = {"family": family, "name": name, "lower_is_better": lower}
        return maker(name), echo, family

    comps = val.get("components")
    if not isinstance(comps, list) or len(comps) != 2:
        chk.fail("endpoint.components", "expected a list of exactly two components")
        return None, None, None
    names, lowers = [], []
    for i, comp in enumerate(comps):
        cval = chk.obj(comp, f"endpoint.components[{i}]", required={"name": 1}, optional={"lower_is_better": 1})
        if cval is None:
            return None, None, None
        name = chk.string(cval.get("name"), f"endpoint.components[{i}].name")
        lower = cval.get("lower_is_better", False)
        if name is None or chk.boolean(lower, f"endpoint.components[{i}].lower_is_better") is None:
            return None, None, None
        names.append(name)
        lowers.append(lower)
    combination = "any" if family == "multiple" else "all"
    spec = two_binary_endpoints(names[0], names[1], combination)
    echo = {
        "family": family,
        "components": [
            {"name": n, "lower_is_better": lo} for n, lo in zip(names, lowers)
        ],
    }
    return spec, echo, family


def _truth(chk: _Check, raw, path: str, family: str):
    """Parse a true-state object for the given family; returns (truth, echo)."""
    if family == "binary":
        val = chk.obj(raw, path, required={"response_prob": 1}, optional={})
        if val is None:
            return None, None
        p = chk.number(val.get("response_prob"), f"{path}.response_prob", lo=0.0, hi=1.0)
        if p is None:
            return None, None
        return BinaryTruth(p), {"response_prob": p}
    if family == "continuous":
        val = chk.obj(raw, path, required={"mean": 1}, optional={"sd": 1})
        if val is None:
            return None, None
        mean = chk.number(val.get("mean"), f"{path}.mean")
        sd = chk.number(val.get("sd", 1.0), f"{path}.sd", lo=0.0, strict_lo=True)
        if mean is None or sd is None:
            return None, None
        return ContinuousTruth(mean, sd), {"mean": mean, "sd": sd}
    if family == "time_to_event":
        val = chk.obj(raw, path, required={"median_months": 1}, optional={})
        if val is None:
            return None, None
        m = chk.number(val.get("median_months"), f"{path}.median_months", lo=0.0, strict_lo=True)
        if m is None:
            return None, None
        return TimeToEventTruth(m), {"median_months": m}
    # multiple / coprimary
    val = chk.obj(raw, path, required={}, optional={"marginals": 1, "odds_ratio": 1, "joint": 1})
    if val is None:
        return None, None
    if "joint" in val:
        if "marginals" in val or "odds_ratio" in val:
            chk.fail(path, "give either joint cell probabilities or marginals, not both")
            return None, None
        joint = _numbers_list(chk, val.get("joint"), f"{path}.joint", length=4)
        if joint is None:
            return None, None
        if abs(sum(joint) - 1.0) > 1e-9 or any(p < 0 for p in joint):
            chk.fail(f"{path}.joint", "cell probabilities must be nonnegative and sum to 1")
            return None, None
        return CategoricalTruth(tuple(joint)), {"joint": joint}
    marg = _numbers_list(chk, val.get("marginals"), f"{path}.marginals", length=2)
    if marg is None:
        chk.fail(path, "needs marginals (or joint cell probabilities)")
        return None, None
    if any(not 0.0 <= m <= 1.0 for m in marg):
        chk.fail(f"{path}.marginals", "marginals must lie in [0, 1]")
        return None, None
    odds = chk.number(val.get("odds_ratio", 1.0), f"{path}.odds_ratio", lo=0.0, strict_lo=True)
    if odds is None:
        return None, None
    truth = CategoricalTruth.from_marginals((marg[0], marg[1]), odds_ratio=odds)
    return truth, {"marginals": marg, "odds_ratio": odds}


def _profile_values(chk: _Check, raw, path: str, n_endpoints: int) -> list[float] | None:
    if isinstance(raw, (int, float)) and not isinstance(raw, bool):
        if n_endpoints != 1:
            chk.fail(path, f"expected {n_endpoints} values, one per endpoint")
            return None
        return [float(raw)]
    return _numbers_list(chk, raw, path, length=n_endpoints)


def _prior(chk: _Check, raw, family: str, spec: EndpointSpec):
    defaults = {
        "binary": {"a": 0.1, "b": 0.1},
        "continuous": {"mean0": 0.0, "n0": 1e-3, "a": 1e-6, "b": 1e-6},
        "time_to_event": {"a": 1e-6, "b": 1e-6},
    }
    if family in defaults:
        fields = defaults[family]
        val = chk.obj(raw if raw is not None else {}, "priors", required={}, optional=fields)
        if val is None:
            return None, None
        out = {}
        for key, dflt in fields.items():
            strict = key != "mean0"
            v = chk.number(val.get(key, dflt), f"priors.{key}", lo=0.0 if strict else None, strict_lo=strict)
            if v is None:
                return None, None
            out[key] = v
        maker = {
            "binary": lambda d: BinaryPrior(a=d["a"], b=d["b"]),
            "continuous": lambda d: ContinuousPrior(mean0=d["mean0"], n0=d["n0"], a=d["a"], b=d["b"]),
            "time_to_event": lambda d: TimeToEventPrior(a=d["a"], b=d["b"]),
        }[family]
        return maker(out), out
    k = spec.n_cells
    val = chk.obj(raw if raw is not None else {}, "priors", required={}, optional={"alpha": 1})
    if val is None:
        return None, None
    alpha = val.get("alpha", [1.0 / k] * k)
    alpha = _numbers_list(chk, alpha, "priors.alpha", length=k)
    if alpha is None:
        return None, None
    if any(a <= 0 for a in alpha):
        chk.fail("priors.alpha", "pseudo-counts must be strictly positive")
        return None, None
    return CategoricalPrior(tuple(alpha)), {"alpha": alpha}


def validate_config(raw: dict) -> ValidatedConfig:
    """Validate a design config, applying and echoing every default.

    Raises ConfigError with one entry per offending field.
    """
    chk = _Check()
    top = chk.obj(
        raw,
        "",
        required={"endpoint": 1, "plan": 1, "profile": 1},
        optional={
            "priors": 1,
            "constraints": 1,
            "objective": 1,
            "grid": 1,
            "simulation": 1,
            "calibration_truth": 1,
            "scenarios": 1,
        },
    )
    if top is None:
        raise ConfigError(chk.errors)

    spec, endpoint_echo, family = _endpoint_spec(chk, raw.get("endpoint"))
    if spec is None:
        raise ConfigError(chk.errors)
    engine_family = spec.family  # "categorical" for multiple/coprimary

    # ---- plan ----
    plan_defaults = {
        "interim_looks": [],
        "arms": 1,
        "randomization_ratio": [1, 1],
        "accrual_per_month": 1.0,
        "followup_months": 12.0,
        "allow_superiority": False,
        "three_decision_interim": False,
        "poisson_accrual": False,
    }
    pval = chk.obj(
        raw.get("plan"), "plan", required={"max_n": 1}, optional={k: 1 for k in plan_defaults}
    )
    if pval is None:
        raise ConfigError(chk.errors)
    max_n = chk.integer(pval.get("max_n"), "plan.max_n", lo=1)
    looks_raw = pval.get("interim_looks", [])
    looks: tuple[int, ...] | None = None
    if isinstance(looks_raw, list):
        parsed = [chk.integer(v, f"plan.interim_looks[{i}]", lo=1) for i, v in enumerate(looks_raw)]
        if all(v is not None for v in parsed):
            looks = tuple(parsed)
    else:
        chk.fail("plan.interim_looks", "expected a list of integers")
    arms = pval.get("arms", 1)
    if arms not in (1, 2):
        chk.fail("plan.arms", "must be 1 or 2")
        arms = None
    ratio_raw = pval.get("randomization_ratio", [1, 1])
    ratio = None
    if isinstance(ratio_raw, list) and len(ratio_raw) == 2:
        a = chk.integer(ratio_raw[0], "plan.randomization_ratio[0]", lo=1)
        b = chk.integer(ratio_raw[1], "plan.randomization_ratio[1]", lo=1)
        if a is not None and b is not None:
            ratio = (a, b)
    else:
        chk.fail("plan.randomization_ratio", "expected [experimental, control] positive integers")
    accrual = chk.number(pval.get("accrual_per_month", 1.0), "plan.accrual_per_month", lo=0.0, strict_lo=True)
    followup = chk.number(pval.get("followup_months", 12.0), "plan.followup_months", lo=0.0)
    superiority = chk.boolean(pval.get("allow_superiority", False), "plan.allow_superiority")
    three_decision = chk.boolean(
        pval.get("three_decision_interim", False), "plan.three_decision_interim"
    )
    poisson = chk.boolean(pval.get("poisson_accrual", False), "plan.poisson_accrual")

    plan = None
    if None not in (max_n, looks, arms, ratio, accrual, followup, superiority, three_decision, poisson):
        try:
            plan = TrialPlan(
                endpoint=spec,
                max_n=max_n,
                interim_looks=looks,
                arms=arms,
                randomization_ratio=ratio,
                accrual_per_month=accrual,
                followup_months=followup,
                allow_superiority=superiority,
                three_decision_interim=three_decision,
                poisson_accrual=poisson,
            )
        except ValueError as exc:
            chk.fail("plan", str(exc))
    if plan is None:
        raise ConfigError(chk.errors)

    # ---- profile ----
    n_ep = spec.n_endpoints
    prof_val = chk.obj(
        raw.get("profile"),
        "profile",
        required={"theta_lrv": 1, "theta_cmv": 1, "theta_futile": 1, "theta_eff": 1},
        optional={},
    )
    profile = None
    prof_echo: dict = {}
    if prof_val is not None:
        vals = {}
        for key in ("theta_lrv", "theta_cmv", "theta_futile", "theta_eff"):
            vals[key] = _profile_values(chk, prof_val.get(key), f"profile.{key}", n_ep)
        if all(v is not None for v in vals.values()):
            lowers = tuple(
                endpoint_echo.get("lower_is_better", False)
                if "components" not in endpoint_echo
                else endpoint_echo["components"][i]["lower_is_better"]
                for i in range(n_ep)
            )
            try:
                profile = TargetProfile(
                    theta_lrv=tuple(vals["theta_lrv"]),
                    theta_cmv=tuple(vals["theta_cmv"]),
                    theta_futile=tuple(vals["theta_futile"]),
                    theta_eff=tuple(vals["theta_eff"]),
                    lower_is_better=lowers,
                )
                prof_echo = {k: list(v) for k, v in vals.items()}
            except ValueError as exc:
                chk.fail("profile", str(exc))
    if profile is None:
        raise ConfigError(chk.errors)

    # ---- priors ----
    prior, prior_echo = _prior(chk, raw.get("priors"), family, spec)
    if prior is None:
        raise ConfigError(chk.errors)

    # ---- constraints ----
    con_defaults = {"max_false_go": 0.05, "max_false_nogo": 0.10, "max_false_consider": 0.20}
    cval = chk.obj(raw.get("constraints", {}), "constraints", required={}, optional=con_defaults)
    constraints = None
    con_echo: dict = {}
    if cval is not None:
        got = {}
        for key, dflt in con_defaults.items():
            v = chk.number(cval.get(key, dflt), f"constraints.{key}", lo=0.0, strict_lo=True)
            if v is not None and v >= 1.0:
                chk.fail(f"constraints.{key}", "must be strictly below 1")
                v = None
            got[key] = v
        if all(v is not None for v in got.values()):
            constraints = ConstraintSet(**got)
            con_echo = got

    # ---- objective ----
    objective = chk.string(raw.get("objective", "optimal"), "objective", choices=("optimal", "minN"))

    # ---- grid ----
    grid_defaults = {
        "lambda_lrv": [0.50, 0.99, 0.01],
        "lambda_cmv": [0.01, 0.50, 0.01],
        "gamma_lrv": [0.0, 1.0, 0.1],
        "gamma_cmv": [0.0, 1.0, 0.1],
    }
    gval = chk.obj(raw.get("grid", {}), "grid", required={}, optional=grid_defaults)
    grid = None
    grid_echo: dict = {}
    if gval is not None:
        axes = {}
        for key, dflt in grid_defaults.items():
            triple = _numbers_list(chk, gval.get(key, dflt), f"grid.{key}", length=3)
            if triple is not None and triple[2] <= 0:
                chk.fail(f"grid.{key}", "step must be positive")
                triple = None
            axes[key] = triple
        if all(v is not None for v in axes.values()):
            try:
                grid = GridSpec(
                    lam_lrv=tuple(axes["lambda_lrv"]),
                    lam_cmv=tuple(axes["lambda_cmv"]),
                    gam_lrv=tuple(axes["gamma_lrv"]),
                    gam_cmv=tuple(axes["gamma_cmv"]),
                )
                grid_echo = {k: list(v) for k, v in axes.items()}
            except ValueError as exc:
                chk.fail("grid", str(exc))

    # ---- simulation settings ----
    sim_defaults = {"n_sims": 10_000, "seed": 0, "difference_draws": 100_000}
    sval = chk.obj(raw.get("simulation", {}), "simulation", required={}, optional=sim_defaults)
    n_sims = seed = draws = None
    if sval is not None:
        n_sims = chk.integer(sval.get("n_sims", sim_defaults["n_sims"]), "simulation.n_sims", lo=1000)
        seed = chk.integer(sval.get("seed", sim_defaults["seed"]), "simulation.seed", lo=0)
        draws = chk.integer(
            sval.get("difference_draws", sim_defaults["difference_draws"]),
            "simulation.difference_draws",
            lo=10_000,
        )

    # ---- calibration truths ----
    calib_scenarios = None
    calib_echo = None
    if "calibration_truth" in raw:
        ct = chk.obj(
            raw.get("calibration_truth"),
            "calibration_truth",
            required={"futile": 1, "effective": 1},
            optional={"control": 1},
        )
        if ct is not None:
            fut, fut_echo = _truth(chk, ct.get("futile"), "calibration_truth.futile", family)
            eff, eff_echo = _truth(chk, ct.get("effective"), "calibration_truth.effective", family)
            control = control_echo = None
            if plan.arms == 2:
                if "control" not in ct:
                    chk.fail("calibration_truth.control", "randomized plans need a control truth")
                else:
                    control, control_echo = _truth(chk, ct.get("control"), "calibration_truth.control", family)
            elif "control" in ct:
                chk.fail("calibration_truth.control", "single-arm plans take no control truth")
            if fut is not None and eff is not None and (plan.arms == 1 or control is not None):
                calib_scenarios = (
                    Scenario(label="futile", experimental=fut, control=control),
                    Scenario(label="effective", experimental=eff, control=control),
                )
                calib_echo = {"futile": fut_echo, "effective": eff_echo}
                if control_echo is not None:
                    calib_echo["control"] = control_echo
    elif plan.arms == 2:
        chk.fail("calibration_truth", "randomized plans need explicit futile/effective/control truths")

    # ---- scenario list (simulation runs) ----
    scenarios: list[Scenario] = []
    scen_echo = []
    if "scenarios" in raw:
        if not isinstance(raw["scenarios"], list) or not raw["scenarios"]:
            chk.fail("scenarios", "expected a nonempty list")
        else:
            for i, sraw in enumerate(raw["scenarios"]):
                sval2 = chk.obj(
                    sraw,
                    f"scenarios[{i}]",
                    required={"label": 1, "experimental": 1},
                    optional={"control": 1},
                )
                if sval2 is None:
                    continue
                label = chk.string(sval2.get("label"), f"scenarios[{i}].label")
                exp, exp_echo = _truth(chk, sval2.get("experimental"), f"scenarios[{i}].experimental", family)
                control = control_echo = None
                if plan.arms == 2:
                    if "control" not in sval2:
                        chk.fail(f"scenarios[{i}].control", "randomized plans need a control truth")
                    else:
                        control, control_echo = _truth(chk, sval2.get("control"), f"scenarios[{i}].control", family)
                elif "control" in sval2:
                    chk.fail(f"scenarios[{i}].control", "single-arm plans take no control truth")
                if label is not None and exp is not None and (plan.arms == 1 or control is not None):
                    scenarios.append(Scenario(label=label, experimental=exp, control=control))
                    entry = {"label": label, "experimental": exp_echo}
                    if control_echo is not None:
                        entry["control"] = control_echo
                    scen_echo.append(entry)

    if chk.errors:
        raise ConfigError(chk.errors)

    echo = {
        "endpoint": endpoint_echo,
        "plan": {
            "max_n": max_n,
            "interim_looks": list(looks),
            "arms": arms,
            "randomization_ratio": list(ratio),
            "accrual_per_month": accrual,
            "followup_months": followup,
            "allow_superiority": superiority,
            "three_decision_interim": three_decision,
            "poisson_accrual": poisson,
        },
        "priors": prior_echo,
        "profile": prof_echo,
        "constraints": con_echo,
        "objective": objective,
        "grid": grid_echo,
        "simulation": {"n_sims": n_sims, "seed": seed, "difference_draws": draws},
    }
    if calib_echo is not None:
        echo["calibration_truth"] = calib_echo
    if scen_echo:
        echo["scenarios"] = scen_echo

    return ValidatedConfig(
        echo=copy.deepcopy(echo),
        plan=plan,
        prior=prior,
        profile=profile,
        constraints=constraints,
        objective=objective,
        grid=grid,
        n_sims=n_sims,
        seed=seed,
        draws=draws,
        calibration_scenarios=calib_scenarios,
        scenarios=scenarios,
    )
