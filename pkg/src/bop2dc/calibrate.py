"""Grid-search calibration of the four decision thresholds.

Every grid point is scored under a futile and an effective scenario, exactly
(binary single-arm) or by replaying one frozen set of simulated trials
(common random numbers).  Feasible points respect the false-go / false-no-go /
false-consider limits; the "optimal" objective then maximizes the correct-go
rate and "minN" minimizes the expected sample size under the futile scenario.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ._rng import SeedLike
from .decision import DesignParams, TargetProfile
from .posterior import DEFAULT_DIFFERENCE_DRAWS
from .simulate import (
    BinaryTruth,
    CategoricalTruth,
    ContinuousTruth,
    OperatingCharacteristics,
    PosteriorPaths,
    Prior,
    Scenario,
    TimeToEventTruth,
    TrialPlan,
    apply_design_to_paths,
    binary_look_tails,
    estimate_oc,
    exact_binary_oc_batch,
    exact_oc_binary_single_arm,
    simulate_paths,
)

__all__ = [
    "ConstraintSet",
    "GridSpec",
    "CalibrationResult",
    "SharedDatasets",
    "axis_values",
    "build_grid",
    "default_scenarios",
    "make_shared_datasets",
    "evaluate_point",
    "calibrate",
]

_FUTILE_TAG = 11
_EFFECTIVE_TAG = 12
_VALIDATE_TAG = 13

_CHUNK = 2048  # grid points scored per vectorized pass

Objective = str  # "optimal" | "minN"


@dataclass(frozen=True)
class ConstraintSet:
    """Upper limits on the error rates of the calibrated design."""

    max_false_go: float = 0.05
    max_false_nogo: float = 0.10
    max_false_consider: float = 0.20

    def __post_init__(self):
        for v in (self.max_false_go, self.max_false_nogo, self.max_false_consider):
            if not 0.0 < v < 1.0:
                raise ValueError("constraint limits must lie strictly inside (0, 1)")


Axis = tuple[float, float, float]  # start, stop, step


@dataclass(frozen=True)
class GridSpec:
    """Search ranges for the cutoffs (lam) and the information powers (gam)."""

    lam_lrv: Axis = (0.50, 0.99, 0.01)
    lam_cmv: Axis = (0.01, 0.50, 0.01)
    gam_lrv: Axis = (0.0, 1.0, 0.1)
    gam_cmv: Axis = (0.0, 1.0, 0.1)

    def __post_init__(self):
        for start, stop, step in (self.lam_lrv, self.lam_cmv, self.gam_lrv, self.gam_cmv):
            if step <= 0:
                raise ValueError("grid steps must be positive")
            if stop < start:
                raise ValueError("grid ranges must be nondecreasing")

    def n_points(self) -> int:
        return (
            axis_values(self.lam_lrv).size
            * axis_values(self.lam_cmv).size
            * axis_values(self.gam_lrv).size
            * axis_values(self.gam_cmv).size
        )


def axis_values(axis: Axis) -> np.ndarray:
    """Inclusive arithmetic grid, rounded so 0.01-style steps stay representable."""
    start, stop, step = axis
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return np.round(start + step * np.arange(count), 12)


def _grid_arrays(grid: GridSpec) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """The four axes raveled in deterministic order: lam_lrv outermost, gam_cmv innermost."""
    l1, l2, g1, g2 = np.meshgrid(
        axis_values(grid.lam_lrv),
        axis_values(grid.lam_cmv),
        axis_values(grid.gam_lrv),
        axis_values(grid.gam_cmv),
        indexing="ij",
    )
    return l1.ravel(), l2.ravel(), g1.ravel(), g2.ravel()


def build_grid(grid: GridSpec) -> list[DesignParams]:
    """All candidate threshold settings, in stable evaluation order."""
    l1, l2, g1, g2 = _grid_arrays(grid)
    if l1.size == 0:
        raise ValueError("grid has an empty axis")
    return [
        DesignParams(lam_lrv=float(a), lam_cmv=float(b), gam_lrv=float(c), gam_cmv=float(d))
        for a, b, c, d in zip(l1, l2, g1, g2)
    ]


# --------------------------------------------------------------------------
# Scenario construction and shared datasets
# --------------------------------------------------------------------------

def default_scenarios(plan: TrialPlan, profile: TargetProfile) -> tuple[Scenario, Scenario]:
    """Futile and effective calibration scenarios from the target profile.

    Single-arm only: a randomized plan needs explicit arm-level truths because
    the profile pins down the effect difference, not the control level.
    """
    if plan.arms != 1:
        raise ValueError("randomized plans need explicit calibration scenarios")
    fam = plan.endpoint.family

    def truth(values: tuple[float, ...]):
        if fam == "binary":
            return BinaryTruth(response_prob=values[0])
        if fam == "continuous":
            return ContinuousTruth(mean=values[0])  # unit SD unless a scenario overrides
        if fam == "time_to_event":
            return TimeToEventTruth(median_months=values[0])
        if any(counts != 2 for counts in plan.endpoint.category_counts):
            raise ValueError("default joint scenarios exist only for binary components")
        if len(values) != 2:
            raise ValueError("default joint scenarios support exactly two components")
        return CategoricalTruth.from_marginals((values[0], values[1]))

    return (
        Scenario(label="futile", experimental=truth(profile.theta_futile)),
        Scenario(label="effective", experimental=truth(profile.theta_eff)),
    )


@dataclass(frozen=True)
class SharedDatasets:
    """Frozen posterior paths for the futile and effective scenarios."""

    futile: PosteriorPaths
    effective: PosteriorPaths


def make_shared_datasets(
    plan: TrialPlan,
    prior: Prior,
    profile: TargetProfile,
    scenarios: tuple[Scenario, Scenario],
    n_sims: int,
    seed: SeedLike,
    draws: int = DEFAULT_DIFFERENCE_DRAWS,
) -> SharedDatasets:
    futile, effective = scenarios
    return SharedDatasets(
        futile=simulate_paths(
            futile, plan, prior, profile, n_sims, _sub(seed, _FUTILE_TAG), draws=draws
        ),
        effective=simulate_paths(
            effective, plan, prior, profile, n_sims, _sub(seed, _EFFECTIVE_TAG), draws=draws
        ),
    )


def _sub(seed: SeedLike, tag: int) -> tuple:
    base = seed if isinstance(seed, tuple) else (seed,)
    return (*base, tag)


def evaluate_point(
    design: DesignParams,
    shared: SharedDatasets,
    plan: TrialPlan,
    prior: Prior,
    profile: TargetProfile,
) -> tuple[OperatingCharacteristics, OperatingCharacteristics]:
    """OC under both calibration scenarios by replaying the frozen datasets.

    The prior and profile are already baked into the paths; they are accepted
    so the call site carries the full design context.
    """
    del prior, profile
    return (
        apply_design_to_paths(shared.futile, design, plan),
        apply_design_to_paths(shared.effective, design, plan),
    )


# --------------------------------------------------------------------------
# Calibration result
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CalibrationResult:
    params: DesignParams
    oc_futile: OperatingCharacteristics
    oc_effective: OperatingCharacteristics
    objective: Objective
    objective_value: float
    feasible: bool
    n_grid_points: int
    constraints: ConstraintSet
    evaluation: str  # "exact" | "mc"
    n_feasible: int
    prior: Prior
    validation_futile: OperatingCharacteristics | None = None
    validation_effective: OperatingCharacteristics | None = None
    metrics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {
            "params": {
                "lambda_lrv": self.params.lam_lrv,
                "lambda_cmv": self.params.lam_cmv,
                "gamma_lrv": self.params.gam_lrv,
                "gamma_cmv": self.params.gam_cmv,
            },
            "objective": self.objective,
            "objective_value": self.objective_value,
            "feasible": self.feasible,
            "evaluation": self.evaluation,
            "n_grid_points": self.n_grid_points,
            "n_feasible": self.n_feasible,
            "constraints": {
                "max_false_go": self.constraints.max_false_go,
                "max_false_nogo": self.constraints.max_false_nogo,
                "max_false_consider": self.constraints.max_false_consider,
            },
            "metrics": dict(self.metrics),
            "oc_futile": self.oc_futile.to_dict(),
            "oc_effective": self.oc_effective.to_dict(),
        }
        if self.validation_futile is not None:
            d["validation_futile"] = self.validation_futile.to_dict()
        if self.validation_effective is not None:
            d["validation_effective"] = self.validation_effective.to_dict()
        return d


# --------------------------------------------------------------------------
# Grid evaluation
# --------------------------------------------------------------------------

def _cutoff_matrices(
    l1: np.ndarray, l2: np.ndarray, g1: np.ndarray, g2: np.ndarray, looks, max_n: int
):
    frac = np.array([n / max_n for n in looks])
    c1 = l1[:, None] * frac[None, :] ** g1[:, None]
    c2 = l2[:, None] * frac[None, :] ** g2[:, None]
    return c1, c2


def _graduate_matrices(l1: np.ndarray, l2: np.ndarray, looks, max_n: int):
    from scipy import stats as _st

    frac = np.sqrt(np.array([n / max_n for n in looks]))
    z1 = _st.norm.ppf((1.0 + l1) / 2.0)[:, None]
    z2 = _st.norm.ppf((1.0 + l2) / 2.0)[:, None]
    return (
        2.0 * _st.norm.cdf(z1 / frac[None, :]) - 1.0,
        2.0 * _st.norm.cdf(z2 / frac[None, :]) - 1.0,
    )


def _combined_mask(
    p1: np.ndarray,
    p2: np.ndarray,
    c1: np.ndarray,
    c2: np.ndarray,
    j: int,
    combination: str | None,
    favorable: bool,
    below: bool,
) -> np.ndarray:
    """(g, t) event mask at look j, reduced across endpoints.

    ``below`` selects the comparison direction (no-go checks strictly below,
    go/graduate strictly above); the same cutoffs apply to every endpoint.
    """
    n_ep = p1.shape[2]
    acc = None
    want_all = (combination == "any") != favorable if n_ep > 1 else True
    for e in range(n_ep):
        if below:
            m = (p1[None, :, j, e] < c1[:, j : j + 1]) & (p2[None, :, j, e] < c2[:, j : j + 1])
        else:
            m = (p1[None, :, j, e] > c1[:, j : j + 1]) & (p2[None, :, j, e] > c2[:, j : j + 1])
        if acc is None:
            acc = m
        elif want_all:
            acc &= m
        else:
            acc |= m
    return acc


def _stop_duration_sum(stop: np.ndarray, durations_j: np.ndarray) -> np.ndarray:
    """Duration mass of stopped trials, avoiding BLAS so results do not depend
    on the thread count."""
    if durations_j.size and np.ptp(durations_j) == 0.0:
        return stop.sum(axis=1) * durations_j[0]
    return np.einsum("gt,t->g", stop.astype(np.float64), durations_j)


def _mc_oc_grid(
    paths: PosteriorPaths,
    c1: np.ndarray,
    c2: np.ndarray,
    plan: TrialPlan,
    grad1: np.ndarray | None,
    grad2: np.ndarray | None,
) -> dict[str, np.ndarray]:
    """Vectorized replay of many designs over frozen posterior paths."""
    g = c1.shape[0]
    t = paths.n_sims
    looks = paths.looks
    comb = plan.endpoint.combination
    p1, p2 = paths.p_lrv, paths.p_cmv
    has_dur = paths.stop_durations is not None

    alive = np.ones((g, t), dtype=bool)
    nogo = np.zeros(g, dtype=np.int64)
    graduate = np.zeros(g, dtype=np.int64)
    n_total = np.zeros(g, dtype=np.int64)
    dur_total = np.zeros(g)
    for j in range(len(looks) - 1):
        if grad1 is not None:
            grad = alive & _combined_mask(p1, p2, grad1, grad2, j, comb, True, below=False)
            k = grad.sum(axis=1)
            graduate += k
            n_total += k * looks[j]
            if has_dur:
                dur_total += _stop_duration_sum(grad, paths.stop_durations[:, j])
            alive &= ~grad
        stop = alive & _combined_mask(p1, p2, c1, c2, j, comb, False, below=True)
        k = stop.sum(axis=1)
        nogo += k
        n_total += k * looks[j]
        if has_dur:
            dur_total += _stop_duration_sum(stop, paths.stop_durations[:, j])
        alive &= ~stop

    jf = len(looks) - 1
    go_m = alive & _combined_mask(p1, p2, c1, c2, jf, comb, True, below=False)
    nogo_m = alive & ~go_m & _combined_mask(p1, p2, c1, c2, jf, comb, False, below=True)
    alive_k = alive.sum(axis=1)
    go_k = go_m.sum(axis=1)
    nogo_k = nogo_m.sum(axis=1)
    n_total += alive_k * looks[jf]
    if has_dur:
        dur_total += _stop_duration_sum(alive, paths.stop_durations[:, jf])
    return {
        "go": go_k / t,
        "nogo": (nogo + nogo_k) / t,
        "consider": (alive_k - go_k - nogo_k) / t,
        "graduate": graduate / t,
        "avg_n": n_total / t,
        "avg_dur": (dur_total / t) if has_dur else None,
    }


def _grid_metrics_exact(
    plan: TrialPlan,
    prior: Prior,
    profile: TargetProfile,
    scenarios: tuple[Scenario, Scenario],
    arrays,
    progress: Callable[[float], None] | None,
) -> dict[str, np.ndarray]:
    l1, l2, g1, g2 = arrays
    tails_lrv, tails_cmv = binary_look_tails(plan, prior, profile)
    futile_theta = scenarios[0].experimental.response_prob
    eff_theta = scenarios[1].experimental.response_prob
    g = l1.size
    out = {
        k: np.zeros(g)
        for k in ("fgr", "fngr", "cgr", "fcr", "exp_n_futile", "consider_futile", "consider_eff")
    }
    for s in range(0, g, _CHUNK):
        e = min(s + _CHUNK, g)
        c1, c2 = _cutoff_matrices(l1[s:e], l2[s:e], g1[s:e], g2[s:e], plan.looks, plan.max_n)
        fut = exact_binary_oc_batch(c1, c2, None, None, tails_lrv, tails_cmv, plan.looks, futile_theta)
        eff = exact_binary_oc_batch(c1, c2, None, None, tails_lrv, tails_cmv, plan.looks, eff_theta)
        out["fgr"][s:e] = fut["go"]
        out["fngr"][s:e] = eff["nogo"]
        out["cgr"][s:e] = eff["go"]
        out["fcr"][s:e] = np.maximum(fut["consider"], eff["consider"])
        out["exp_n_futile"][s:e] = fut["avg_n"]
        out["consider_futile"][s:e] = fut["consider"]
        out["consider_eff"][s:e] = eff["consider"]
        if progress is not None:
            progress(e / g)
    return out


def _grid_metrics_mc(
    plan: TrialPlan,
    shared: SharedDatasets,
    arrays,
    progress: Callable[[float], None] | None,
) -> dict[str, np.ndarray]:
    l1, l2, g1, g2 = arrays
    g = l1.size
    out = {
        k: np.zeros(g)
        for k in ("fgr", "fngr", "cgr", "fcr", "exp_n_futile", "consider_futile", "consider_eff")
    }
    for s in range(0, g, _CHUNK):
        e = min(s + _CHUNK, g)
        c1, c2 = _cutoff_matrices(l1[s:e], l2[s:e], g1[s:e], g2[s:e], plan.looks, plan.max_n)
        grad1 = grad2 = None
        if plan.allow_superiority:
            grad1, grad2 = _graduate_matrices(l1[s:e], l2[s:e], plan.looks, plan.max_n)
        elif plan.three_decision_interim:
            grad1, grad2 = c1, c2
        fut = _mc_oc_grid(shared.futile, c1, c2, plan, grad1, grad2)
        eff = _mc_oc_grid(shared.effective, c1, c2, plan, grad1, grad2)
        out["fgr"][s:e] = fut["go"]
        out["fngr"][s:e] = eff["nogo"]
        out["cgr"][s:e] = eff["go"]
        out["fcr"][s:e] = np.maximum(fut["consider"], eff["consider"])
        out["exp_n_futile"][s:e] = fut["avg_n"]
        out["consider_futile"][s:e] = fut["consider"]
        out["consider_eff"][s:e] = eff["consider"]
        if progress is not None:
            progress(e / g)
    return out


def _select(
    metrics: dict[str, np.ndarray],
    constraints: ConstraintSet,
    objective: Objective,
) -> tuple[int, bool, int]:
    """Chosen grid index, feasibility, and feasible count.

    Ties break toward the earliest grid index.  An infeasible grid yields the
    point with the smallest worst constraint violation.
    """
    feasible = (
        (metrics["fgr"] <= constraints.max_false_go)
        & (metrics["fngr"] <= constraints.max_false_nogo)
        & (metrics["fcr"] <= constraints.max_false_consider)
    )
    n_feasible = int(feasible.sum())
    if n_feasible == 0:
        violation = np.maximum.reduce(
            [
                np.maximum(metrics["fgr"] - constraints.max_false_go, 0.0),
                np.maximum(metrics["fngr"] - constraints.max_false_nogo, 0.0),
                np.maximum(metrics["fcr"] - constraints.max_false_consider, 0.0),
            ]
        )
        return int(np.argmin(violation)), False, 0
    if objective == "optimal":
        score = np.where(feasible, metrics["cgr"], -np.inf)
        return int(np.argmax(score)), True, n_feasible
    score = np.where(feasible, metrics["exp_n_futile"], np.inf)
    return int(np.argmin(score)), True, n_feasible


def calibrate(
    plan: TrialPlan,
    prior: Prior,
    profile: TargetProfile,
    constraints: ConstraintSet = ConstraintSet(),
    objective: Objective = "optimal",
    grid: GridSpec = GridSpec(),
    n_sims: int = 10_000,
    seed: SeedLike = 0,
    scenarios: tuple[Scenario, Scenario] | None = None,
    draws: int = DEFAULT_DIFFERENCE_DRAWS,
    progress: Callable[[float], None] | None = None,
    validate: bool = True,
    validate_sims: int | None = None,
) -> CalibrationResult:
    """Search the threshold grid and return the best feasible design.

    Binary single-arm plans are scored exactly by dynamic programming; all
    other plans replay one frozen set of n_sims simulated trials per scenario
    across every grid point.  A fresh-seed Monte Carlo validation run of the
    chosen design is attached unless ``validate`` is off.
    """
    if objective not in ("optimal", "minN"):
        raise ValueError("objective must be 'optimal' or 'minN'")
    if scenarios is None:
        scenarios = default_scenarios(plan, profile)
    arrays = _grid_arrays(grid)
    n_grid = arrays[0].size
    if n_grid == 0:
        raise ValueError("grid has an empty axis")

    exact = (
        plan.endpoint.family == "binary"
        and plan.arms == 1
        and not plan.allow_superiority
        and not plan.three_decision_interim
    )
    if exact:
        metrics = _grid_metrics_exact(plan, prior, profile, scenarios, arrays, progress)
    else:
        shared = make_shared_datasets(plan, prior, profile, scenarios, n_sims, seed, draws=draws)
        metrics = _grid_metrics_mc(plan, shared, arrays, progress)

    idx, feasible, n_feasible = _select(metrics, constraints, objective)
    params = DesignParams(
        lam_lrv=float(arrays[0][idx]),
        lam_cmv=float(arrays[1][idx]),
        gam_lrv=float(arrays[2][idx]),
        gam_cmv=float(arrays[3][idx]),
    )

    if exact:
        oc_fut = exact_oc_binary_single_arm(scenarios[0], params, plan, prior, profile)
        oc_eff = exact_oc_binary_single_arm(scenarios[1], params, plan, prior, profile)
    else:
        oc_fut, oc_eff = evaluate_point(params, shared, plan, prior, profile)

    validation_fut = validation_eff = None
    if validate:
        v_sims = validate_sims if validate_sims is not None else n_sims
        validation_fut = estimate_oc(
            scenarios[0], params, plan, prior, profile, v_sims,
            _sub(seed, _VALIDATE_TAG) + (0,), draws=draws,
        )
        validation_eff = estimate_oc(
            scenarios[1], params, plan, prior, profile, v_sims,
            _sub(seed, _VALIDATE_TAG) + (1,), draws=draws,
        )

    objective_value = (
        float(metrics["cgr"][idx]) if objective == "optimal" else float(metrics["exp_n_futile"][idx])
    )
    return CalibrationResult(
        params=params,
        oc_futile=oc_fut,
        oc_effective=oc_eff,
        objective=objective,
        objective_value=objective_value,
        feasible=feasible,
        n_grid_points=n_grid,
        constraints=constraints,
        evaluation="exact" if exact else "mc",
        n_feasible=n_feasible,
        prior=prior,
        validation_futile=validation_fut,
        validation_effective=validation_eff,
        metrics={
            "fgr": float(metrics["fgr"][idx]),
            "fngr": float(metrics["fngr"][idx]),
            "cgr": float(metrics["cgr"][idx]),
            "fcr": float(metrics["fcr"][idx]),
            "expected_n_futile": float(metrics["exp_n_futile"][idx]),
        },
    )
