"""Virtual-trial generation, look-schedule execution, and operating characteristics.

Monte Carlo estimates use one counter-based stream per simulated trial, so
results are identical no matter how work is scheduled.  Binary single-arm
designs additionally get an exact answer by dynamic programming over response
counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import stats as _scipy_stats

from ._rng import SeedLike, stream
from .decision import (
    Decision,
    DesignParams,
    TargetProfile,
    combine_coprimary,
    combine_multiple,
    final_decision,
    graduate_cutoff,
    interim_cutoffs,
    interim_decision_rct,
    interim_decision_three,
)
from .posterior import (
    DEFAULT_DIFFERENCE_DRAWS,
    LN2,
    BetaPosterior,
    BinaryPrior,
    BinaryStats,
    CategoricalPrior,
    CategoricalStats,
    ContinuousPrior,
    ContinuousStats,
    TimeToEventPrior,
    TimeToEventStats,
    binary_posterior,
    continuous_posterior,
    linear_posterior,
    tte_posterior,
)

__all__ = [
    "FAMILIES",
    "MonitoredEndpoint",
    "EndpointSpec",
    "binary_endpoint",
    "continuous_endpoint",
    "tte_endpoint",
    "two_binary_endpoints",
    "BinaryTruth",
    "ContinuousTruth",
    "TimeToEventTruth",
    "CategoricalTruth",
    "Scenario",
    "TrialPlan",
    "TrialData",
    "TrialResult",
    "OperatingCharacteristics",
    "PosteriorPaths",
    "Prior",
    "default_prior",
    "generate_trial_data",
    "run_trial",
    "trial_results",
    "simulate_paths",
    "estimate_oc",
    "exact_oc_binary_single_arm",
]

FAMILIES = ("binary", "continuous", "time_to_event", "categorical")

_TRIAL_TAG = 101  # stream namespace for per-trial data generation


# --------------------------------------------------------------------------
# Endpoint specification
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class MonitoredEndpoint:
    """One monitored quantity; categorical families derive it via a cell selector."""

    name: str
    selector: tuple[int, ...] | None = None


@dataclass(frozen=True)
class EndpointSpec:
    """What the trial measures and how multiple monitored rates combine.

    Scalar families (binary / continuous / time_to_event) monitor a single
    quantity.  The categorical family models the joint cell distribution of
    two (or more) component endpoints and monitors selected cell sums;
    combination is "any" when benefit on one endpoint suffices (multiple
    endpoints) and "all" when every endpoint must succeed (co-primary).
    """

    family: str
    endpoints: tuple[MonitoredEndpoint, ...]
    combination: str | None = None
    category_counts: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown endpoint family {self.family!r}")
        if not self.endpoints:
            raise ValueError("need at least one monitored endpoint")
        if self.family != "categorical":
            if len(self.endpoints) != 1:
                raise ValueError(f"{self.family} supports a single monitored endpoint")
            if self.combination is not None or self.category_counts is not None:
                raise ValueError("combination/category structure is categorical-only")
            return
        if not self.category_counts or any(c < 2 for c in self.category_counts):
            raise ValueError("categorical family needs category counts of at least 2 each")
        k = self.n_cells
        for ep in self.endpoints:
            if ep.selector is None or len(ep.selector) != k:
                raise ValueError(f"endpoint {ep.name!r} needs a selector of length {k}")
            if any(b not in (0, 1) for b in ep.selector):
                raise ValueError("selector entries must be 0 or 1")
            if sum(ep.selector) in (0, k):
                raise ValueError("selector must pick a strict, nonempty subset of cells")
        if len(self.endpoints) > 1 and self.combination not in ("any", "all"):
            raise ValueError("multi-endpoint specs need combination 'any' or 'all'")
        if len(self.endpoints) == 1 and self.combination is not None:
            raise ValueError("combination is meaningless for a single monitored endpoint")

    @property
    def n_cells(self) -> int:
        return int(np.prod(self.category_counts)) if self.category_counts else 1

    @property
    def n_endpoints(self) -> int:
        return len(self.endpoints)


def binary_endpoint(name: str = "response") -> EndpointSpec:
    return EndpointSpec(family="binary", endpoints=(MonitoredEndpoint(name),))


def continuous_endpoint(name: str = "mean outcome") -> EndpointSpec:
    return EndpointSpec(family="continuous", endpoints=(MonitoredEndpoint(name),))


def tte_endpoint(name: str = "median survival") -> EndpointSpec:
    return EndpointSpec(family="time_to_event", endpoints=(MonitoredEndpoint(name),))


def two_binary_endpoints(name1: str, name2: str, combination: str) -> EndpointSpec:
    """Joint model for two binary endpoints, cells ordered (event1,event2),
    (event1,none), (none,event2), (none,none); category 0 means the event occurred."""
    return EndpointSpec(
        family="categorical",
        endpoints=(
            MonitoredEndpoint(name1, selector=(1, 1, 0, 0)),
            MonitoredEndpoint(name2, selector=(1, 0, 1, 0)),
        ),
        combination=combination,
        category_counts=(2, 2),
    )


# --------------------------------------------------------------------------
# True-state scenarios
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class BinaryTruth:
    response_prob: float

    family = "binary"

    def __post_init__(self):
        if not 0.0 <= self.response_prob <= 1.0:
            raise ValueError("response probability must lie in [0, 1]")


@dataclass(frozen=True)
class ContinuousTruth:
    mean: float
    sd: float = 1.0

    family = "continuous"

    def __post_init__(self):
        if self.sd <= 0:
            raise ValueError("true SD must be positive")


@dataclass(frozen=True)
class TimeToEventTruth:
    median_months: float

    family = "time_to_event"

    def __post_init__(self):
        if self.median_months <= 0:
            raise ValueError("true median must be positive")


@dataclass(frozen=True)
class CategoricalTruth:
    joint: tuple[float, ...]

    family = "categorical"

    def __post_init__(self):
        if any(p < 0 for p in self.joint):
            raise ValueError("cell probabilities must be nonnegative")
        if abs(sum(self.joint) - 1.0) > 1e-9:
            raise ValueError("cell probabilities must sum to 1")

    @classmethod
    def from_marginals(
        cls, marginals: tuple[float, float], odds_ratio: float = 1.0
    ) -> "CategoricalTruth":
        """Joint cells for two binary components from their event marginals.

        Independence by default; an odds ratio other than 1 couples the
        components through the standard 2x2 cross-product solution.
        """
        m1, m2 = marginals
        if not (0.0 <= m1 <= 1.0 and 0.0 <= m2 <= 1.0):
            raise ValueError("marginals must lie in [0, 1]")
        if odds_ratio <= 0:
            raise ValueError("odds ratio must be positive")
        if odds_ratio == 1.0:
            p11 = m1 * m2
        else:
            s = 1.0 + (m1 + m2) * (odds_ratio - 1.0)
            disc = s * s - 4.0 * odds_ratio * (odds_ratio - 1.0) * m1 * m2
            p11 = (s - math.sqrt(disc)) / (2.0 * (odds_ratio - 1.0))
        cells = (p11, m1 - p11, m2 - p11, 1.0 - m1 - m2 + p11)
        cells = tuple(min(max(c, 0.0), 1.0) for c in cells)
        total = sum(cells)
        return cls(joint=tuple(c / total for c in cells))

    def marginal(self, selector: tuple[int, ...]) -> float:
        return float(sum(p for p, b in zip(self.joint, selector) if b))


Truth = BinaryTruth | ContinuousTruth | TimeToEventTruth | CategoricalTruth


@dataclass(frozen=True)
class Scenario:
    """True parameters for one simulated world; control arm only for randomized plans."""

    label: str
    experimental: Truth
    control: Truth | None = None

    def __post_init__(self):
        if self.control is not None and self.control.family != self.experimental.family:
            raise ValueError("experimental and control truths must share a family")


# --------------------------------------------------------------------------
# Trial plan and per-trial records
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class TrialPlan:
    endpoint: EndpointSpec
    max_n: int
    interim_looks: tuple[int, ...] = ()
    arms: int = 1
    randomization_ratio: tuple[int, int] = (1, 1)
    accrual_per_month: float = 1.0
    followup_months: float = 12.0
    allow_superiority: bool = False
    three_decision_interim: bool = False
    poisson_accrual: bool = False

    def __post_init__(self):
        if self.max_n < 1:
            raise ValueError("max sample size must be at least 1")
        if self.allow_superiority and self.three_decision_interim:
            raise ValueError(
                "allow_superiority and three_decision_interim are alternative "
                "superiority-stopping rules; enable at most one"
            )
        if any(n < 1 or n >= self.max_n for n in self.interim_looks):
            raise ValueError("interim looks must lie in [1, max_n)")
        if any(b >= a for a, b in zip(self.interim_looks[1:], self.interim_looks)):
            raise ValueError("interim looks must be strictly increasing")
        if self.arms not in (1, 2):
            raise ValueError("arms must be 1 or 2")
        e, c = self.randomization_ratio
        if not (isinstance(e, int) and isinstance(c, int) and e > 0 and c > 0):
            raise ValueError("randomization ratio components must be positive integers")
        if self.accrual_per_month <= 0:
            raise ValueError("accrual rate must be positive")
        if self.followup_months < 0:
            raise ValueError("follow-up must be nonnegative")

    @property
    def looks(self) -> tuple[int, ...]:
        return (*self.interim_looks, self.max_n)


@dataclass(frozen=True)
class TrialData:
    """Per-patient records in enrollment order; arm 1 = experimental, 0 = control."""

    arm: np.ndarray
    enroll_months: np.ndarray
    outcomes: np.ndarray


@dataclass(frozen=True)
class TrialResult:
    decision: Decision
    stopped_at_look: int  # index into plan.looks; the last index is the final analysis
    n_used: int
    duration_months: float | None  # time-to-event plans only


@dataclass(frozen=True)
class OperatingCharacteristics:
    go_rate: float
    nogo_rate: float
    consider_rate: float
    graduate_rate: float
    avg_sample_size: float
    avg_duration_months: float | None
    n_sims: int  # 0 means the rates are exact, not Monte Carlo
    go_se: float = 0.0
    nogo_se: float = 0.0
    consider_se: float = 0.0
    graduate_se: float = 0.0

    def to_dict(self) -> dict:
        return {
            "go_rate": self.go_rate,
            "nogo_rate": self.nogo_rate,
            "consider_rate": self.consider_rate,
            "graduate_rate": self.graduate_rate,
            "avg_sample_size": self.avg_sample_size,
            "avg_duration_months": self.avg_duration_months,
            "n_sims": self.n_sims,
            "mc_se": {
                "go": self.go_se,
                "nogo": self.nogo_se,
                "consider": self.consider_se,
                "graduate": self.graduate_se,
            },
        }


Prior = BinaryPrior | ContinuousPrior | TimeToEventPrior | CategoricalPrior


def default_prior(spec: EndpointSpec) -> Prior:
    """Vague default hyperparameters for the given endpoint family."""
    if spec.family == "binary":
        return BinaryPrior()
    if spec.family == "continuous":
        return ContinuousPrior()
    if spec.family == "time_to_event":
        return TimeToEventPrior()
    return CategoricalPrior.vague(spec.n_cells)


# --------------------------------------------------------------------------
# Data generation
# --------------------------------------------------------------------------

def _arm_indicator(plan: TrialPlan) -> np.ndarray:
    if plan.arms == 1:
        return np.ones(plan.max_n, dtype=np.int8)
    e, c = plan.randomization_ratio
    block = np.array([1] * e + [0] * c, dtype=np.int8)
    reps = -(-plan.max_n // block.size)
    return np.tile(block, reps)[: plan.max_n]


def generate_trial_data(scenario: Scenario, plan: TrialPlan, seed: SeedLike) -> TrialData:
    """One virtual trial: block-deterministic arm assignment, evenly spaced
    enrollment (one patient every 1/accrual months, first at time zero), and
    i.i.d. outcomes from the scenario's true model.  Deterministic per seed."""
    if scenario.experimental.family != plan.endpoint.family:
        raise ValueError(
            f"scenario family {scenario.experimental.family!r} does not match "
            f"plan family {plan.endpoint.family!r}"
        )
    if plan.arms == 2 and scenario.control is None:
        raise ValueError("randomized plan needs a control-arm truth")
    if plan.arms == 1 and scenario.control is not None:
        raise ValueError("single-arm plan cannot take a control-arm truth")

    n = plan.max_n
    rng = stream(seed)
    arm = _arm_indicator(plan)
    if plan.poisson_accrual:
        enroll = np.cumsum(rng.exponential(1.0 / plan.accrual_per_month, n))
    else:
        enroll = np.arange(n, dtype=np.float64) / plan.accrual_per_month

    exp_t = scenario.experimental
    ctl_t = scenario.control if plan.arms == 2 else exp_t
    fam = plan.endpoint.family
    if fam == "binary":
        p = np.where(arm == 1, exp_t.response_prob, ctl_t.response_prob)
        outcomes = (rng.random(n) < p).astype(np.int8)
    elif fam == "continuous":
        mean = np.where(arm == 1, exp_t.mean, ctl_t.mean)
        sd = np.where(arm == 1, exp_t.sd, ctl_t.sd)
        outcomes = mean + sd * rng.standard_normal(n)
    elif fam == "time_to_event":
        scale = np.where(arm == 1, exp_t.median_months, ctl_t.median_months) / LN2
        outcomes = scale * rng.exponential(1.0, n)
    else:
        cum = np.stack(
            [np.cumsum(ctl_t.joint), np.cumsum(exp_t.joint)]
        )  # row per arm code 0/1
        u = rng.random(n)
        outcomes = np.empty(n, dtype=np.int64)
        for a in (0, 1):
            mask = arm == a
            outcomes[mask] = np.searchsorted(cum[a], u[mask], side="right")
        outcomes = np.minimum(outcomes, len(exp_t.joint) - 1)
    return TrialData(arm=arm, enroll_months=enroll, outcomes=outcomes)


# --------------------------------------------------------------------------
# Look-by-look analysis
# --------------------------------------------------------------------------

def _analysis_time(data: TrialData, plan: TrialPlan, look_index: int) -> float:
    n = plan.looks[look_index]
    if look_index == len(plan.looks) - 1:
        return float(data.enroll_months[plan.max_n - 1] + plan.followup_months)
    return float(data.enroll_months[n - 1])


def _stats_at_look(data: TrialData, plan: TrialPlan, look_index: int):
    """Sufficient statistics per arm from what is observable at the look.

    Count and continuous endpoints see the first n enrolled outcomes; survival
    endpoints see every enrolled patient censored at the analysis time.
    Returns (experimental, control-or-None).
    """
    n = plan.looks[look_index]
    fam = plan.endpoint.family
    arm = data.arm[:n]
    out = data.outcomes[:n]

    def per_arm(mask: np.ndarray):
        x = out[mask]
        if fam == "binary":
            return BinaryStats(n=int(mask.sum()), y=int(x.sum()))
        if fam == "continuous":
            if x.size == 0:
                raise ValueError("a look left one arm without any patients")
            mean = float(np.mean(x))
            return ContinuousStats(n=int(x.size), mean=mean, sum_sq_dev=float(np.sum((x - mean) ** 2)))
        if fam == "time_to_event":
            tau = _analysis_time(data, plan, look_index)
            fup = np.maximum(tau - data.enroll_months[:n][mask], 0.0)
            events = int(np.count_nonzero(x <= fup))
            total = float(np.sum(np.minimum(x, fup)))
            return TimeToEventStats(n=int(x.size), events=events, total_time=total)
        counts = np.bincount(x, minlength=plan.endpoint.n_cells)
        return CategoricalStats(counts=tuple(int(c) for c in counts))

    stats_e = per_arm(arm == 1)
    stats_c = per_arm(arm == 0) if plan.arms == 2 else None
    return stats_e, stats_c


def _posterior_for(stats, prior, endpoint: MonitoredEndpoint, fam: str):
    if fam == "binary":
        return binary_posterior(stats, prior)
    if fam == "continuous":
        return continuous_posterior(stats, prior)
    if fam == "time_to_event":
        return tte_posterior(stats, prior)
    return linear_posterior(stats, prior, endpoint.selector)


@lru_cache(maxsize=200_000)
def _difference_tails(post_e, post_c, t_lrv: float, t_cmv: float, draws: int):
    """Both difference tails from one paired draw set, seeded by the inputs."""
    entropy = (
        9,
        *post_e._seed_fields(),
        *post_c._seed_fields(),
        *(int(np.float64(t).view(np.uint64)) for t in (t_lrv, t_cmv)),
        int(draws),
    )
    rng = stream(entropy)
    e = post_e.sample(rng, draws)
    c = post_c.sample(rng, draws)
    d = e - c
    return (
        float(np.count_nonzero(d > t_lrv) / draws),
        float(np.count_nonzero(d > t_cmv) / draws),
    )


def _endpoint_probs(
    stats_pair,
    plan: TrialPlan,
    prior: Prior,
    profile: TargetProfile,
    draws: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Favorable-direction posterior probabilities versus theta_lrv and theta_cmv,
    one entry per monitored endpoint."""
    stats_e, stats_c = stats_pair
    fam = plan.endpoint.family
    n_ep = plan.endpoint.n_endpoints
    p_lrv = np.empty(n_ep)
    p_cmv = np.empty(n_ep)
    for i, ep in enumerate(plan.endpoint.endpoints):
        post_e = _posterior_for(stats_e, prior, ep, fam)
        t1, t2 = profile.theta_lrv[i], profile.theta_cmv[i]
        if plan.arms == 1:
            a, b = post_e.tail(t1), post_e.tail(t2)
        else:
            post_c = _posterior_for(stats_c, prior, ep, fam)
            a, b = _difference_tails(post_e, post_c, t1, t2, draws)
        if profile.lower_is_better[i]:
            a, b = 1.0 - a, 1.0 - b
        p_lrv[i], p_cmv[i] = a, b
    return p_lrv, p_cmv


def _designs_per_endpoint(
    design: DesignParams | tuple[DesignParams, ...] | list,
    n_endpoints: int,
) -> tuple[DesignParams, ...]:
    if isinstance(design, DesignParams):
        return (design,) * n_endpoints
    designs = tuple(design)
    if len(designs) != n_endpoints:
        raise ValueError("need one DesignParams per monitored endpoint")
    return designs


def _combine(decisions: list[Decision], combination: str | None, stage: str) -> Decision:
    if len(decisions) == 1:
        return decisions[0]
    if combination == "any":
        return combine_multiple(decisions, stage)
    return combine_coprimary(decisions, stage)


def run_trial(
    data: TrialData,
    design: DesignParams | tuple[DesignParams, ...],
    plan: TrialPlan,
    prior: Prior,
    profile: TargetProfile,
    draws: int = DEFAULT_DIFFERENCE_DRAWS,
) -> TrialResult:
    """Walk the look schedule on one dataset and return the trial's outcome."""
    if profile.n_endpoints != plan.endpoint.n_endpoints:
        raise ValueError("profile and endpoint spec disagree on the number of endpoints")
    designs = _designs_per_endpoint(design, plan.endpoint.n_endpoints)
    looks = plan.looks
    is_tte = plan.endpoint.family == "time_to_event"
    for j, n in enumerate(looks):
        p_lrv, p_cmv = _endpoint_probs(
            _stats_at_look(data, plan, j), plan, prior, profile, draws
        )
        duration = _analysis_time(data, plan, j) if is_tte else None
        if j < len(looks) - 1:
            if plan.three_decision_interim:
                decs = [
                    interim_decision_three(p_lrv[i], p_cmv[i], designs[i], n, plan.max_n)
                    for i in range(len(designs))
                ]
            else:
                decs = [
                    interim_decision_rct(
                        p_lrv[i], p_cmv[i], designs[i], n, plan.max_n, plan.allow_superiority
                    )
                    for i in range(len(designs))
                ]
            combined = _combine(decs, plan.endpoint.combination, "interim")
            if combined in (Decision.NO_GO, Decision.GRADUATE):
                return TrialResult(combined, j, n, duration)
        else:
            decs = [
                final_decision(p_lrv[i], p_cmv[i], designs[i]) for i in range(len(designs))
            ]
            combined = _combine(decs, plan.endpoint.combination, "final")
            return TrialResult(combined, j, n, duration)
    raise AssertionError("unreachable: final look always returns")


def trial_results(
    scenario: Scenario,
    design: DesignParams | tuple[DesignParams, ...],
    plan: TrialPlan,
    prior: Prior,
    profile: TargetProfile,
    n_sims: int,
    seed: SeedLike,
    draws: int = DEFAULT_DIFFERENCE_DRAWS,
) -> list[TrialResult]:
    """Per-trial outcomes under per-trial seeds derived from (seed, trial index)."""
    return [
        run_trial(
            generate_trial_data(scenario, plan, _trial_seed(seed, i)),
            design,
            plan,
            prior,
            profile,
            draws=draws,
        )
        for i in range(n_sims)
    ]


def _trial_seed(seed: SeedLike, index: int) -> tuple:
    base = seed if isinstance(seed, tuple) else (seed,)
    return (*base, _TRIAL_TAG, index)


# --------------------------------------------------------------------------
# Posterior paths: the shared-dataset representation
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class PosteriorPaths:
    """Per-trial, per-look, per-endpoint posterior probabilities for one scenario.

    Generated once and replayed under many cutoff settings; this is what makes
    grid-search calibration with common random numbers cheap.
    """

    looks: tuple[int, ...]
    p_lrv: np.ndarray  # (n_sims, n_looks, n_endpoints)
    p_cmv: np.ndarray
    stop_durations: np.ndarray | None  # (n_sims, n_looks), time-to-event only
    n_sims: int


def simulate_paths(
    scenario: Scenario,
    plan: TrialPlan,
    prior: Prior,
    profile: TargetProfile,
    n_sims: int,
    seed: SeedLike,
    draws: int = DEFAULT_DIFFERENCE_DRAWS,
) -> PosteriorPaths:
    """Generate n_sims trials and record every look's posterior probabilities.

    Uses the same per-trial datasets and the same statistics code as
    ``run_trial``, so replaying a design on the paths reproduces the
    trial-by-trial walk exactly.
    """
    looks = plan.looks
    n_looks = len(looks)
    n_ep = plan.endpoint.n_endpoints
    is_tte = plan.endpoint.family == "time_to_event"
    p_lrv = np.empty((n_sims, n_looks, n_ep))
    p_cmv = np.empty((n_sims, n_looks, n_ep))
    durations = np.empty((n_sims, n_looks)) if is_tte else None
    for i in range(n_sims):
        data = generate_trial_data(scenario, plan, _trial_seed(seed, i))
        for j in range(n_looks):
            a, b = _endpoint_probs(_stats_at_look(data, plan, j), plan, prior, profile, draws)
            p_lrv[i, j], p_cmv[i, j] = a, b
            if is_tte:
                durations[i, j] = _analysis_time(data, plan, j)
    return PosteriorPaths(
        looks=looks, p_lrv=p_lrv, p_cmv=p_cmv, stop_durations=durations, n_sims=n_sims
    )


def _design_cutoffs(
    designs: tuple[DesignParams, ...], plan: TrialPlan
) -> tuple[np.ndarray, np.ndarray, np.ndarray | None, np.ndarray | None]:
    """Interim/final cutoffs (and graduate bounds when superiority stopping is on),
    shaped (n_looks, n_endpoints).

    The three-decision variant graduates on the interim cutoffs themselves; the
    randomized-trial variant uses the stricter normal-quantile bounds.
    """
    looks = plan.looks
    superiority = plan.allow_superiority or plan.three_decision_interim
    c_lrv = np.empty((len(looks), len(designs)))
    c_cmv = np.empty((len(looks), len(designs)))
    g_lrv = np.empty_like(c_lrv) if superiority else None
    g_cmv = np.empty_like(c_cmv) if superiority else None
    for j, n in enumerate(looks):
        for i, d in enumerate(designs):
            c_lrv[j, i], c_cmv[j, i] = interim_cutoffs(d, n, plan.max_n)
            if plan.allow_superiority:
                g_lrv[j, i] = graduate_cutoff(d.lam_lrv, n, plan.max_n)
                g_cmv[j, i] = graduate_cutoff(d.lam_cmv, n, plan.max_n)
            elif plan.three_decision_interim:
                g_lrv[j, i], g_cmv[j, i] = c_lrv[j, i], c_cmv[j, i]
    return c_lrv, c_cmv, g_lrv, g_cmv


def _combine_masks(per_endpoint: np.ndarray, combination: str | None, favorable: bool) -> np.ndarray:
    """Reduce an (n_sims, n_endpoints) mask across endpoints.

    Unfavorable events (no-go) need every endpoint under 'any' combination but
    just one under 'all'; favorable events (go / graduate) mirror that.
    """
    if per_endpoint.shape[1] == 1:
        return per_endpoint[:, 0]
    want_all = (combination == "any") != favorable
    return per_endpoint.all(axis=1) if want_all else per_endpoint.any(axis=1)


def apply_design_to_paths(
    paths: PosteriorPaths,
    design: DesignParams | tuple[DesignParams, ...],
    plan: TrialPlan,
) -> OperatingCharacteristics:
    """Replay one design over frozen posterior paths and tally the outcomes."""
    designs = _designs_per_endpoint(design, plan.endpoint.n_endpoints)
    c_lrv, c_cmv, g_lrv, g_cmv = _design_cutoffs(designs, plan)
    comb = plan.endpoint.combination
    t = paths.n_sims
    looks = paths.looks

    alive = np.ones(t, dtype=bool)
    nogo_n = 0
    graduate_n = 0
    n_total = 0
    dur_total = 0.0
    has_dur = paths.stop_durations is not None
    for j in range(len(looks) - 1):
        nogo_ep = (paths.p_lrv[:, j, :] < c_lrv[j]) & (paths.p_cmv[:, j, :] < c_cmv[j])
        stop = _combine_masks(nogo_ep, comb, favorable=False) & alive
        if g_lrv is not None:
            grad_ep = (paths.p_lrv[:, j, :] > g_lrv[j]) & (paths.p_cmv[:, j, :] > g_cmv[j])
            grad = _combine_masks(grad_ep, comb, favorable=True) & alive
            graduate_n += int(grad.sum())
            n_total += int(grad.sum()) * looks[j]
            if has_dur:
                dur_total += float(paths.stop_durations[grad, j].sum())
            alive &= ~grad
            stop &= ~grad
        nogo_n += int(stop.sum())
        n_total += int(stop.sum()) * looks[j]
        if has_dur:
            dur_total += float(paths.stop_durations[stop, j].sum())
        alive &= ~stop

    jf = len(looks) - 1
    go_ep = (paths.p_lrv[:, jf, :] > c_lrv[jf]) & (paths.p_cmv[:, jf, :] > c_cmv[jf])
    nogo_ep = (paths.p_lrv[:, jf, :] < c_lrv[jf]) & (paths.p_cmv[:, jf, :] < c_cmv[jf])
    go = _combine_masks(go_ep, comb, favorable=True) & alive
    nogo_fin = _combine_masks(nogo_ep, comb, favorable=False) & alive & ~go
    consider = alive & ~go & ~nogo_fin
    go_n = int(go.sum())
    nogo_n += int(nogo_fin.sum())
    consider_n = int(consider.sum())
    n_total += int(alive.sum()) * plan.max_n
    if has_dur:
        dur_total += float(paths.stop_durations[alive, jf].sum())

    def rate(k: int) -> float:
        return k / t

    def se(k: int) -> float:
        r = rate(k)
        return math.sqrt(r * (1.0 - r) / t)

    return OperatingCharacteristics(
        go_rate=rate(go_n),
        nogo_rate=rate(nogo_n),
        consider_rate=rate(consider_n),
        graduate_rate=rate(graduate_n),
        avg_sample_size=n_total / t,
        avg_duration_months=(dur_total / t) if has_dur else None,
        n_sims=t,
        go_se=se(go_n),
        nogo_se=se(nogo_n),
        consider_se=se(consider_n),
        graduate_se=se(graduate_n),
    )


def estimate_oc(
    scenario: Scenario,
    design: DesignParams | tuple[DesignParams, ...],
    plan: TrialPlan,
    prior: Prior,
    profile: TargetProfile,
    n_sims: int,
    seed: SeedLike,
    draws: int = DEFAULT_DIFFERENCE_DRAWS,
) -> OperatingCharacteristics:
    """Monte Carlo operating characteristics over n_sims independent trials."""
    if n_sims < 1000:
        raise ValueError("need at least 1000 simulated trials")
    paths = simulate_paths(scenario, plan, prior, profile, n_sims, seed, draws=draws)
    return apply_design_to_paths(paths, design, plan)


# --------------------------------------------------------------------------
# Exact operating characteristics for binary single-arm designs
# --------------------------------------------------------------------------

def binary_look_tails(
    plan: TrialPlan, prior: BinaryPrior, profile: TargetProfile
) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Favorable-direction posterior probabilities for every (look, y) pair."""
    if plan.endpoint.family != "binary" or plan.arms != 1:
        raise ValueError("exact tails exist only for single-arm binary plans")
    t_lrv, t_cmv = profile.theta_lrv[0], profile.theta_cmv[0]
    lower = profile.lower_is_better[0]
    tails_lrv, tails_cmv = [], []
    for n in plan.looks:
        y = np.arange(n + 1)
        post = [BetaPosterior(prior.a + int(v), prior.b + n - int(v)) for v in y]
        a = np.array([p.tail(t_lrv) for p in post])
        b = np.array([p.tail(t_cmv) for p in post])
        if lower:
            a, b = 1.0 - a, 1.0 - b
        tails_lrv.append(a)
        tails_cmv.append(b)
    return tails_lrv, tails_cmv


def _shift_accumulate(mass: np.ndarray, pmf: np.ndarray, width: int) -> np.ndarray:
    """Propagate continue-mass through a binomial count increment.

    Plain shifted adds rather than a matrix product, so the result does not
    depend on the BLAS thread count.
    """
    g, y1 = mass.shape
    out = np.zeros((g, width))
    for k in range(pmf.size):
        out[:, k : k + y1] += mass * pmf[k]
    return out


def exact_binary_oc_batch(
    cut_lrv: np.ndarray,
    cut_cmv: np.ndarray,
    grad_lrv: np.ndarray | None,
    grad_cmv: np.ndarray | None,
    tails_lrv: list[np.ndarray],
    tails_cmv: list[np.ndarray],
    looks: tuple[int, ...],
    theta: float,
) -> dict[str, np.ndarray]:
    """Exact OC for a batch of cutoff schedules, via DP over response counts.

    cut_* are (n_designs, n_looks) realized cutoffs; grad_* are graduate bounds
    or None when superiority stopping is off.
    """
    g = cut_lrv.shape[0]
    go = np.zeros(g)
    nogo = np.zeros(g)
    graduate = np.zeros(g)
    avg_n = np.zeros(g)

    first = looks[0]
    mass = np.broadcast_to(
        _scipy_stats.binom.pmf(np.arange(first + 1), first, theta), (g, first + 1)
    ).copy()
    for j, n in enumerate(looks[:-1]):
        t1, t2 = tails_lrv[j][None, :], tails_cmv[j][None, :]
        if grad_lrv is not None:
            grad_mask = (t1 > grad_lrv[:, j : j + 1]) & (t2 > grad_cmv[:, j : j + 1])
            stopped = (mass * grad_mask).sum(axis=1)
            graduate += stopped
            avg_n += stopped * n
            mass = mass * ~grad_mask
        nogo_mask = (t1 < cut_lrv[:, j : j + 1]) & (t2 < cut_cmv[:, j : j + 1])
        stopped = (mass * nogo_mask).sum(axis=1)
        nogo += stopped
        avg_n += stopped * n
        n_add = looks[j + 1] - n
        pmf = _scipy_stats.binom.pmf(np.arange(n_add + 1), n_add, theta)
        mass = _shift_accumulate(mass * ~nogo_mask, pmf, looks[j + 1] + 1)

    jf = len(looks) - 1
    t1, t2 = tails_lrv[jf][None, :], tails_cmv[jf][None, :]
    go_mask = (t1 > cut_lrv[:, jf : jf + 1]) & (t2 > cut_cmv[:, jf : jf + 1])
    nogo_mask = (t1 < cut_lrv[:, jf : jf + 1]) & (t2 < cut_cmv[:, jf : jf + 1])
    go += (mass * go_mask).sum(axis=1)
    nogo += (mass * nogo_mask).sum(axis=1)
    consider = (mass * (~go_mask & ~nogo_mask)).sum(axis=1)
    avg_n += mass.sum(axis=1) * looks[jf]
    return {
        "go": go,
        "nogo": nogo,
        "consider": consider,
        "graduate": graduate,
        "avg_n": avg_n,
    }


def exact_oc_binary_single_arm(
    scenario: Scenario,
    design: DesignParams,
    plan: TrialPlan,
    prior: BinaryPrior,
    profile: TargetProfile,
) -> OperatingCharacteristics:
    """Exact decision rates and expected sample size for a binary single-arm design."""
    if plan.arms != 1 or plan.endpoint.family != "binary":
        raise ValueError("exact OC requires a single-arm, single binary endpoint plan")
    if scenario.experimental.family != "binary":
        raise ValueError("scenario must carry a binary truth")
    tails_lrv, tails_cmv = binary_look_tails(plan, prior, profile)
    c_lrv, c_cmv, g_lrv, g_cmv = _design_cutoffs((design,), plan)
    res = exact_binary_oc_batch(
        c_lrv[:, 0][None, :],
        c_cmv[:, 0][None, :],
        g_lrv[:, 0][None, :] if g_lrv is not None else None,
        g_cmv[:, 0][None, :] if g_cmv is not None else None,
        tails_lrv,
        tails_cmv,
        plan.looks,
        scenario.experimental.response_prob,
    )
    return OperatingCharacteristics(
        go_rate=float(res["go"][0]),
        nogo_rate=float(res["nogo"][0]),
        consider_rate=float(res["consider"][0]),
        graduate_rate=float(res["graduate"][0]),
        avg_sample_size=float(res["avg_n"][0]),
        avg_duration_months=None,
        n_sims=0,
    )
