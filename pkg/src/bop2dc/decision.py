"""Dual-criterion decision rules: final go/consider/no-go, interim futility and
superiority boundaries, and the multiple / co-primary combination strategies.

All comparisons are strict, so a posterior probability exactly equal to its
cutoff never counts as exceeding (or undercutting) it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from scipy import stats as _stats

__all__ = [
    "Decision",
    "DesignParams",
    "TargetProfile",
    "final_decision",
    "interim_cutoffs",
    "interim_decision",
    "graduate_cutoff",
    "interim_decision_rct",
    "interim_decision_three",
    "combine_multiple",
    "combine_coprimary",
]


class Decision(Enum):
    GO = "go"
    CONSIDER = "consider"
    NO_GO = "no-go"
    CONTINUE = "continue"
    GRADUATE = "graduate"


_FINAL = frozenset({Decision.GO, Decision.CONSIDER, Decision.NO_GO})
_INTERIM = frozenset({Decision.CONTINUE, Decision.NO_GO, Decision.GRADUATE})


@dataclass(frozen=True)
class DesignParams:
    """Probability cutoffs (lam) and information-fraction powers (gam).

    The interim cutoff at sample size n out of N is lam * (n/N)**gam, one pair
    per criterion (statistical bar at theta_lrv, clinical bar at theta_cmv).
    """

    lam_lrv: float
    lam_cmv: float
    gam_lrv: float = 0.0
    gam_cmv: float = 0.0

    def __post_init__(self):
        for lam in (self.lam_lrv, self.lam_cmv):
            if not (0.0 < lam < 1.0):
                raise ValueError("probability cutoffs must lie strictly inside (0, 1)")
        for gam in (self.gam_lrv, self.gam_cmv):
            if not (math.isfinite(gam) and gam >= 0.0):
                raise ValueError("cutoff powers must be finite and nonnegative")


@dataclass(frozen=True)
class TargetProfile:
    """Reference values per monitored endpoint, in endpoint units.

    theta_lrv is the minimum bar for a statistical effect, theta_cmv the
    minimal clinically meaningful effect.  theta_futile / theta_eff anchor the
    calibration scenarios.  lower_is_better flips the favorable direction
    (toxicity-type endpoints), in which case the engine monitors
    P(effect < threshold) instead of P(effect > threshold).
    """

    theta_lrv: tuple[float, ...]
    theta_cmv: tuple[float, ...]
    theta_futile: tuple[float, ...]
    theta_eff: tuple[float, ...]
    lower_is_better: tuple[bool, ...]

    def __post_init__(self):
        m = len(self.theta_lrv)
        if not (len(self.theta_cmv) == len(self.theta_futile) == len(self.theta_eff) == m):
            raise ValueError("profile fields must have one value per endpoint")
        if len(self.lower_is_better) != m:
            raise ValueError("need one direction flag per endpoint")
        for lrv, cmv, eff, lower in zip(
            self.theta_lrv, self.theta_cmv, self.theta_eff, self.lower_is_better
        ):
            if lower:
                if not cmv < lrv:
                    raise ValueError("lower-is-better endpoint needs theta_cmv < theta_lrv")
                if not eff <= cmv:
                    raise ValueError("theta_eff must be at least as favorable as theta_cmv")
            else:
                if not cmv > lrv:
                    raise ValueError("theta_cmv must exceed theta_lrv")
                if not eff >= cmv:
                    raise ValueError("theta_eff must be at least as favorable as theta_cmv")

    @classmethod
    def single(
        cls,
        theta_lrv: float,
        theta_cmv: float,
        theta_futile: float,
        theta_eff: float,
        lower_is_better: bool = False,
    ) -> "TargetProfile":
        return cls(
            theta_lrv=(theta_lrv,),
            theta_cmv=(theta_cmv,),
            theta_futile=(theta_futile,),
            theta_eff=(theta_eff,),
            lower_is_better=(lower_is_better,),
        )

    @property
    def n_endpoints(self) -> int:
        return len(self.theta_lrv)


def final_decision(p_lrv: float, p_cmv: float, d: DesignParams) -> Decision:
    """End-of-trial rule: go needs both bars cleared, no-go needs both missed."""
    _check_prob(p_lrv, p_cmv)
    above_lrv = p_lrv > d.lam_lrv
    above_cmv = p_cmv > d.lam_cmv
    if above_lrv and above_cmv:
        return Decision.GO
    if p_lrv < d.lam_lrv and p_cmv < d.lam_cmv:
        return Decision.NO_GO
    return Decision.CONSIDER


def interim_cutoffs(d: DesignParams, n: int, big_n: int) -> tuple[float, float]:
    """Cutoffs lam * (n/N)**gam at an analysis with n of N patients."""
    if not 1 <= n <= big_n:
        raise ValueError(f"need 1 <= n <= N, got n={n}, N={big_n}")
    frac = n / big_n
    return d.lam_lrv * frac**d.gam_lrv, d.lam_cmv * frac**d.gam_cmv


def interim_decision(p_lrv: float, p_cmv: float, d: DesignParams, n: int, big_n: int) -> Decision:
    """Interim futility rule: stop only when both probabilities sit below their cutoffs."""
    _check_prob(p_lrv, p_cmv)
    c_lrv, c_cmv = interim_cutoffs(d, n, big_n)
    if p_lrv < c_lrv and p_cmv < c_cmv:
        return Decision.NO_GO
    return Decision.CONTINUE


def graduate_cutoff(lam: float, n: int, big_n: int) -> float:
    """Early-superiority bound 2*Phi(z_{(1+lam)/2} / sqrt(n/N)) - 1.

    Spends success probability the way an O'Brien-Fleming boundary spends
    alpha: very strict early, relaxing to lam at n = N.
    """
    if not 1 <= n <= big_n:
        raise ValueError(f"need 1 <= n <= N, got n={n}, N={big_n}")
    if not 0.0 < lam < 1.0:
        raise ValueError("lam must lie strictly inside (0, 1)")
    z = _stats.norm.ppf((1.0 + lam) / 2.0)
    return float(2.0 * _stats.norm.cdf(z / math.sqrt(n / big_n)) - 1.0)


def interim_decision_three(
    p_lrv: float, p_cmv: float, d: DesignParams, n: int, big_n: int
) -> Decision:
    """Three-outcome interim variant: the final rule applied at the interim
    cutoffs, with go mapped to graduate and consider mapped to continue."""
    _check_prob(p_lrv, p_cmv)
    c_lrv, c_cmv = interim_cutoffs(d, n, big_n)
    if p_lrv > c_lrv and p_cmv > c_cmv:
        return Decision.GRADUATE
    if p_lrv < c_lrv and p_cmv < c_cmv:
        return Decision.NO_GO
    return Decision.CONTINUE


def interim_decision_rct(
    p_lrv: float,
    p_cmv: float,
    d: DesignParams,
    n: int,
    big_n: int,
    allow_superiority: bool,
) -> Decision:
    """Interim rule with optional graduate (early superiority) stopping.

    With superiority off this is exactly the plain interim rule.  Graduate is
    checked first; its cutoffs are at least lam, so the graduate and no-go
    regions cannot overlap.
    """
    _check_prob(p_lrv, p_cmv)
    if allow_superiority:
        if p_lrv > graduate_cutoff(d.lam_lrv, n, big_n) and p_cmv > graduate_cutoff(
            d.lam_cmv, n, big_n
        ):
            return Decision.GRADUATE
    return interim_decision(p_lrv, p_cmv, d, n, big_n)


def combine_multiple(per_endpoint: list[Decision], stage: str) -> Decision:
    """Multiple endpoints: effect on at least one endpoint establishes benefit.

    Final: go if any endpoint is go, no-go only if all are.  Interim: stop only
    if every endpoint says no-go (graduate if any endpoint graduates).
    """
    _check_stage(per_endpoint, stage)
    if stage == "interim":
        if any(dec is Decision.GRADUATE for dec in per_endpoint):
            return Decision.GRADUATE
        if all(dec is Decision.NO_GO for dec in per_endpoint):
            return Decision.NO_GO
        return Decision.CONTINUE
    if any(dec is Decision.GO for dec in per_endpoint):
        return Decision.GO
    if all(dec is Decision.NO_GO for dec in per_endpoint):
        return Decision.NO_GO
    return Decision.CONSIDER


def combine_coprimary(per_endpoint: list[Decision], stage: str) -> Decision:
    """Co-primary endpoints: benefit requires an effect on every endpoint.

    Final: go only if all endpoints are go, no-go if any is.  Interim: stop as
    soon as any endpoint says no-go (graduate only if all graduate).
    """
    _check_stage(per_endpoint, stage)
    if stage == "interim":
        if any(dec is Decision.NO_GO for dec in per_endpoint):
            return Decision.NO_GO
        if all(dec is Decision.GRADUATE for dec in per_endpoint):
            return Decision.GRADUATE
        return Decision.CONTINUE
    if any(dec is Decision.NO_GO for dec in per_endpoint):
        return Decision.NO_GO
    if all(dec is Decision.GO for dec in per_endpoint):
        return Decision.GO
    return Decision.CONSIDER


def _check_prob(*ps: float) -> None:
    for p in ps:
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"posterior probability outside [0, 1]: {p}")


def _check_stage(per_endpoint: list[Decision], stage: str) -> None:
    if stage not in ("interim", "final"):
        raise ValueError(f"stage must be 'interim' or 'final', got {stage!r}")
    if len(per_endpoint) < 2:
        raise ValueError("combination rules need at least two endpoint decisions")
    allowed = _INTERIM if stage == "interim" else _FINAL
    bad = [dec for dec in per_endpoint if dec not in allowed]
    if bad:
        raise ValueError(f"decisions {bad} do not belong to the {stage} stage")
