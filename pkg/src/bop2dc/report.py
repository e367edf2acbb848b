"""Human-facing outputs: integer decision tables, operating-characteristic
tables in the familiar go / no-go / consider layout, and a protocol-style
design summary.  Everything renders deterministically; no timestamps."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

from .calibrate import CalibrationResult
from .decision import (
    Decision,
    DesignParams,
    TargetProfile,
    final_decision,
    interim_cutoffs,
    interim_decision,
)
from .posterior import BinaryPrior, BinaryStats, tail_prob_binary
from .simulate import (
    CategoricalTruth,
    OperatingCharacteristics,
    Prior,
    Scenario,
    TrialPlan,
)

__all__ = [
    "DecisionTable",
    "decision_table_binary",
    "OcTable",
    "render_oc_table",
    "protocol_summary",
]


# --------------------------------------------------------------------------
# Decision tables for count endpoints
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class DecisionTable:
    """Integer response-count boundaries per look for a binary single-arm design.

    stop_bounds[j] is the largest responder count still yielding no-go at look
    j (-1 when no count stops).  At the final look go_bound is the smallest
    count yielding go (max_n + 1 when go is unreachable); counts strictly
    between the final stop bound and the go bound read consider.
    """

    looks: tuple[int, ...]
    stop_bounds: tuple[int, ...]
    go_bound: int

    @property
    def consider_range(self) -> tuple[int, int] | None:
        lo = self.stop_bounds[-1] + 1
        hi = self.go_bound - 1
        return (lo, hi) if lo <= hi else None


def decision_table_binary(
    design: DesignParams,
    plan: TrialPlan,
    prior: BinaryPrior,
    profile: TargetProfile,
) -> DecisionTable:
    """Tabulate the decision rule by scanning every responder count at each look."""
    if plan.arms != 1 or plan.endpoint.family != "binary":
        raise ValueError("decision tables exist only for single-arm binary designs")
    t_lrv, t_cmv = profile.theta_lrv[0], profile.theta_cmv[0]
    lower = profile.lower_is_better[0]
    looks = plan.looks
    stop_bounds = []
    go_bound = plan.max_n + 1
    for j, n in enumerate(looks):
        final = j == len(looks) - 1
        stop = -1
        for y in range(n + 1):
            stats = BinaryStats(n=n, y=y)
            p1 = tail_prob_binary(stats, prior, t_lrv)
            p2 = tail_prob_binary(stats, prior, t_cmv)
            if lower:
                p1, p2 = 1.0 - p1, 1.0 - p2
            if final:
                dec = final_decision(p1, p2, design)
                if dec is Decision.NO_GO:
                    stop = max(stop, y)
                elif dec is Decision.GO:
                    go_bound = min(go_bound, y)
            else:
                if interim_decision(p1, p2, design, n, plan.max_n) is Decision.NO_GO:
                    stop = max(stop, y)
        stop_bounds.append(stop)
    return DecisionTable(looks=looks, stop_bounds=tuple(stop_bounds), go_bound=go_bound)


# --------------------------------------------------------------------------
# Operating-characteristic tables
# --------------------------------------------------------------------------

def _pct(x: float) -> str:
    """Percent with one decimal, half-up, matching conventional trial tables."""
    return str(Decimal(repr(100.0 * x)).quantize(Decimal("0.1"), rounding=ROUND_HALF_UP))


def _num(x: float) -> str:
    return str(Decimal(repr(x)).quantize(Decimal("0.1"), rounding=ROUND_HALF_UP))


def _truth_text(scenario: Scenario, plan: TrialPlan) -> str:
    def one(truth) -> str:
        if truth.family == "binary":
            return repr(truth.response_prob)
        if truth.family == "continuous":
            return repr(truth.mean)
        if truth.family == "time_to_event":
            return repr(truth.median_months)
        assert isinstance(truth, CategoricalTruth)
        margins = [truth.marginal(ep.selector) for ep in plan.endpoint.endpoints]
        return ";".join(repr(round(m, 10)) for m in margins)

    if scenario.control is None:
        return one(scenario.experimental)
    return f"E={one(scenario.experimental)}|C={one(scenario.control)}"


def _profile_text(values: tuple[float, ...]) -> str:
    return ";".join(repr(v) for v in values)


@dataclass(frozen=True)
class OcTable:
    """Formatted rows ready for CSV or JSON export."""

    columns: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, quoting=csv.QUOTE_MINIMAL, lineterminator="\r\n")
        writer.writerow(self.columns)
        writer.writerows(self.rows)
        return buf.getvalue()

    def to_json_obj(self) -> list[dict[str, str]]:
        return [dict(zip(self.columns, row)) for row in self.rows]

    @staticmethod
    def parse_csv(text: str) -> "OcTable":
        reader = csv.reader(io.StringIO(text))
        rows = [tuple(r) for r in reader]
        return OcTable(columns=rows[0], rows=tuple(rows[1:]))


def render_oc_table(
    results: list[tuple[Scenario, OperatingCharacteristics]],
    plan: TrialPlan,
    profile: TargetProfile,
    design_label: str = "design",
) -> OcTable:
    """One row per scenario: decision rates in percent (one decimal) plus the
    average sample size, and trial duration for survival endpoints."""
    if not results:
        raise ValueError("no scenario results to render")
    is_tte = plan.endpoint.family == "time_to_event"
    columns = [
        "scenario",
        "design",
        "theta_lrv",
        "theta_cmv",
        "theta_true",
        "go_pct",
        "nogo_pct",
        "consider_pct",
        "graduate_pct",
        "avg_sample_size",
    ]
    if is_tte:
        columns.append("avg_duration_months")
    rows = []
    for scenario, oc in results:
        row = [
            scenario.label,
            design_label,
            _profile_text(profile.theta_lrv),
            _profile_text(profile.theta_cmv),
            _truth_text(scenario, plan),
            _pct(oc.go_rate),
            _pct(oc.nogo_rate),
            _pct(oc.consider_rate),
            _pct(oc.graduate_rate),
            _num(oc.avg_sample_size),
        ]
        if is_tte:
            row.append(_num(oc.avg_duration_months or 0.0))
        rows.append(tuple(row))
    return OcTable(columns=tuple(columns), rows=tuple(rows))


# --------------------------------------------------------------------------
# Protocol-style summary
# --------------------------------------------------------------------------

def _prior_lines(prior: Prior) -> list[str]:
    kind = type(prior).__name__
    if isinstance(prior, BinaryPrior):
        return [f"- Response-rate prior: Beta(a={prior.a!r}, b={prior.b!r})."]
    if kind == "ContinuousPrior":
        return [
            "- Mean/variance prior: normal-inverse-gamma with prior mean "
            f"{prior.mean0!r}, effective sample size {prior.n0!r}, "
            f"IG(a={prior.a!r}, b={prior.b!r}) on the variance."
        ]
    if kind == "TimeToEventPrior":
        return [f"- Survival prior: IG(a={prior.a!r}, b={prior.b!r}) on the exponential mean."]
    return [f"- Joint-cell prior: Dirichlet(alpha={list(prior.alpha)!r})."]


def _oc_lines(label: str, oc: OperatingCharacteristics) -> list[str]:
    lines = [
        f"Under the {label} scenario: go {_pct(oc.go_rate)}%, "
        f"no-go {_pct(oc.nogo_rate)}%, consider {_pct(oc.consider_rate)}%"
        + (f", graduate {_pct(oc.graduate_rate)}%" if oc.graduate_rate else "")
        + f"; average sample size {_num(oc.avg_sample_size)}"
    ]
    if oc.avg_duration_months is not None:
        lines[-1] += f"; average trial duration {_num(oc.avg_duration_months)} months"
    lines[-1] += (
        "." if oc.n_sims == 0 else f" (Monte Carlo, {oc.n_sims} simulated trials)."
    )
    return lines


def protocol_summary(
    result: CalibrationResult,
    plan: TrialPlan,
    profile: TargetProfile,
) -> str:
    """Deterministic markdown digest of a calibrated design.

    Lists the thresholds, the per-look decision rule (integer boundaries for a
    binary single-arm design, probability cutoffs otherwise), the operating
    characteristics, and every modeling assumption the numbers rest on.
    """
    d = result.params
    lines: list[str] = []
    add = lines.append
    add("# Trial design summary")
    add("")
    if not result.feasible:
        add("**No design on the search grid met every error-rate constraint.**")
        add(
            "The parameters below minimize the worst constraint violation and are "
            "reported for diagnostics only."
        )
        add("")
    add("## Design parameters")
    add("")
    add(f"- lambda_lrv = {d.lam_lrv!r}, gamma_lrv = {d.gam_lrv!r}")
    add(f"- lambda_cmv = {d.lam_cmv!r}, gamma_cmv = {d.gam_cmv!r}")
    add(f"- Objective: {result.objective}; evaluation: {result.evaluation}.")
    add(
        f"- Grid searched: {result.n_grid_points} candidate settings, "
        f"{result.n_feasible} feasible."
    )
    add("")
    add("## Trial plan")
    add("")
    add(f"- Maximum sample size {plan.max_n}; interim analyses at {list(plan.interim_looks)}.")
    arms = "single-arm" if plan.arms == 1 else (
        f"randomized {plan.randomization_ratio[0]}:{plan.randomization_ratio[1]} "
        "(experimental:control)"
    )
    add(f"- {arms} trial; endpoint family: {plan.endpoint.family}.")
    if plan.allow_superiority:
        add("- Early superiority (graduate) stopping enabled at interims.")
    names = ", ".join(ep.name for ep in plan.endpoint.endpoints)
    add(f"- Monitored endpoint(s): {names}.")
    if plan.endpoint.combination == "any":
        add("- Benefit on any one endpoint suffices (multiple-endpoint rule).")
    elif plan.endpoint.combination == "all":
        add("- Benefit required on every endpoint (co-primary rule).")
    add("")
    add("## Reference values")
    add("")
    add(f"- theta_lrv = {_profile_text(profile.theta_lrv)}")
    add(f"- theta_cmv = {_profile_text(profile.theta_cmv)}")
    add(f"- theta_futile = {_profile_text(profile.theta_futile)}")
    add(f"- theta_eff = {_profile_text(profile.theta_eff)}")
    if any(profile.lower_is_better):
        flags = ";".join(str(b).lower() for b in profile.lower_is_better)
        add(f"- Lower-is-better endpoint flags: {flags}")
    add("")
    add("## Decision rule")
    add("")
    add(
        "Interim: stop for futility when both monitoring probabilities fall "
        "strictly below lambda * (n/N)^gamma; continue otherwise."
    )
    add(
        "Final: go when both probabilities strictly exceed their lambdas; "
        "no-go when both fall strictly below; consider otherwise."
    )
    add("")
    if plan.arms == 1 and plan.endpoint.family == "binary" and not plan.allow_superiority:
        table = decision_table_binary(d, plan, result.prior, profile)
        add("### Decision table (responder counts)")
        add("")
        add("| look n | no-go if y <= | consider | go if y >= |")
        add("|---|---|---|---|")
        for j, n in enumerate(table.looks):
            stop = table.stop_bounds[j]
            stop_txt = str(stop) if stop >= 0 else "never"
            if j < len(table.looks) - 1:
                add(f"| {n} | {stop_txt} | - | - |")
            else:
                rng = table.consider_range
                consider_txt = f"{rng[0]}..{rng[1]}" if rng else "empty"
                go_txt = str(table.go_bound) if table.go_bound <= n else "unreachable"
                add(f"| {n} | {stop_txt} | {consider_txt} | {go_txt} |")
        add("")
    else:
        add("### Probability cutoffs per look")
        add("")
        add("| look n | c_lrv | c_cmv |")
        add("|---|---|---|")
        for n in plan.looks:
            c1, c2 = interim_cutoffs(d, n, plan.max_n)
            add(f"| {n} | {c1!r} | {c2!r} |")
        add("")
    add("## Operating characteristics")
    add("")
    con = result.constraints
    add(
        f"Constraints: false-go <= {_pct(con.max_false_go)}%, "
        f"false-no-go <= {_pct(con.max_false_nogo)}%, "
        f"false-consider <= {_pct(con.max_false_consider)}%. "
        + ("All constraints met." if result.feasible else "Constraints NOT met.")
    )
    add("")
    for line in _oc_lines("futile", result.oc_futile):
        add(line)
    for line in _oc_lines("effective", result.oc_effective):
        add(line)
    if result.validation_futile is not None:
        add("")
        add("Fresh-seed validation:")
        for line in _oc_lines("futile", result.validation_futile):
            add(line)
        for line in _oc_lines("effective", result.validation_effective):
            add(line)
    add("")
    add("## Modeling assumptions")
    add("")
    lines.extend(_prior_lines(result.prior))
    if plan.endpoint.family == "time_to_event":
        accrual = "Poisson arrivals" if plan.poisson_accrual else "one patient every"
        if plan.poisson_accrual:
            add(f"- Accrual: Poisson arrivals at {plan.accrual_per_month!r} patients/month.")
        else:
            add(
                f"- Accrual: deterministic, {accrual} "
                f"{1.0 / plan.accrual_per_month!r} months, first patient at time zero."
            )
        add(f"- Final analysis {plan.followup_months!r} months after the last enrollment.")
        add("- Event times are exponential; the median is the monitored quantity.")
    if plan.endpoint.family == "continuous":
        add(
            "- Simulated outcomes are normal; scenarios without an explicit SD "
            "use 1.0 endpoint unit."
        )
    if plan.endpoint.family == "categorical":
        add(
            "- Joint cell probabilities built from endpoint marginals assume "
            "independence unless an odds ratio or full joint is supplied."
        )
    if plan.arms == 2:
        add(
            "- Arm allocation is block-deterministic at the randomization ratio; "
            "two-arm effect probabilities use paired posterior sampling."
        )
    add("- Ties with a cutoff never trigger the comparison (strict inequalities).")
    add("")
    return "\n".join(lines)
