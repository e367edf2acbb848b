"""Conjugate posterior updates and tail probabilities for each endpoint family.

Endpoint families and their models:

* binary          response count ~ Binomial(rate), rate ~ Beta(a, b)
* continuous      outcomes ~ Normal(mean, var), normal-inverse-gamma prior
* time_to_event   event times ~ Exponential with mean median/ln 2,
                  transformed mean ~ InverseGamma(a, b)
* categorical     joint cell counts ~ Multinomial(p), p ~ Dirichlet(alpha);
                  monitored rates are 0/1-selected sums of p with Beta marginals

Everything here is a pure function of its inputs (plus an explicit seed for
the two-arm difference probability), so calls are thread-safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special, stats

from ._rng import SeedLike, float_bits, stream

LN2 = math.log(2.0)

DEFAULT_DIFFERENCE_DRAWS = 100_000

__all__ = [
    "BinaryPrior",
    "ContinuousPrior",
    "TimeToEventPrior",
    "CategoricalPrior",
    "BinaryStats",
    "ContinuousStats",
    "TimeToEventStats",
    "CategoricalStats",
    "BetaPosterior",
    "StudentTPosterior",
    "InverseGammaPosterior",
    "binary_posterior",
    "continuous_posterior",
    "tte_posterior",
    "linear_posterior",
    "tail_prob_binary",
    "tail_prob_continuous",
    "tail_prob_tte",
    "tail_prob_linear",
    "tail_prob_difference",
]


# --------------------------------------------------------------------------
# Priors
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class BinaryPrior:
    """Beta(a, b) prior on a response probability; a + b is the prior ESS."""

    a: float = 0.1
    b: float = 0.1

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise ValueError("Beta hyperparameters must be strictly positive")


@dataclass(frozen=True)
class ContinuousPrior:
    """Normal-inverse-gamma prior: mean | var ~ N(mean0, var/n0), var ~ IG(a, b)."""

    mean0: float = 0.0
    n0: float = 1e-3
    a: float = 1e-6
    b: float = 1e-6

    def __post_init__(self):
        if not (self.n0 > 0 and self.a > 0 and self.b > 0):
            raise ValueError("n0, a, b must be strictly positive")
        if not math.isfinite(self.mean0):
            raise ValueError("prior mean must be finite")


@dataclass(frozen=True)
class TimeToEventPrior:
    """InverseGamma(a, b) prior on the exponential mean (median / ln 2)."""

    a: float = 1e-6
    b: float = 1e-6

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise ValueError("inverse-gamma hyperparameters must be strictly positive")


@dataclass(frozen=True)
class CategoricalPrior:
    """Dirichlet(alpha_1..alpha_K) prior over joint category probabilities."""

    alpha: tuple[float, ...]

    def __post_init__(self):
        if len(self.alpha) < 2:
            raise ValueError("need at least two categories")
        if not all(a > 0 for a in self.alpha):
            raise ValueError("Dirichlet pseudo-counts must be strictly positive")

    @classmethod
    def vague(cls, k: int) -> "CategoricalPrior":
        """Total pseudo-count of one patient spread over k cells."""
        return cls(alpha=(1.0 / k,) * k)


# --------------------------------------------------------------------------
# Sufficient statistics
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class BinaryStats:
    n: int
    y: int

    def __post_init__(self):
        if not (0 <= self.y <= self.n):
            raise ValueError(f"need 0 <= y <= n, got y={self.y}, n={self.n}")


@dataclass(frozen=True)
class ContinuousStats:
    n: int
    mean: float
    sum_sq_dev: float  # sum of (Y_i - mean)^2

    def __post_init__(self):
        if self.n < 0 or self.sum_sq_dev < 0:
            raise ValueError("n and sum of squared deviations must be nonnegative")


@dataclass(frozen=True)
class TimeToEventStats:
    n: int
    events: int
    total_time: float  # sum of observed times, months

    def __post_init__(self):
        if not (0 <= self.events <= self.n):
            raise ValueError("need 0 <= events <= n")
        if self.total_time < 0:
            raise ValueError("total observed time must be nonnegative")


@dataclass(frozen=True)
class CategoricalStats:
    counts: tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.counts):
            raise ValueError("cell counts must be nonnegative")

    @property
    def n(self) -> int:
        return sum(self.counts)


# --------------------------------------------------------------------------
# Posterior descriptors
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class BetaPosterior:
    a: float
    b: float

    family = "binary"

    def tail(self, t: float) -> float:
        """P(rate > t); regularized incomplete beta complement."""
        if t <= 0.0:
            return 1.0
        if t >= 1.0:
            return 0.0
        return float(1.0 - special.betainc(self.a, self.b, t))

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.beta(self.a, self.b, size)

    def _seed_fields(self) -> tuple[int, ...]:
        return (1, float_bits(self.a), float_bits(self.b))


@dataclass(frozen=True)
class StudentTPosterior:
    """Marginal posterior of a normal mean: Student-t(df) at loc with given scale."""

    df: float
    loc: float
    scale: float

    family = "continuous"

    def tail(self, t: float) -> float:
        return float(stats.t.sf((t - self.loc) / self.scale, self.df))

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return self.loc + self.scale * rng.standard_t(self.df, size)

    def _seed_fields(self) -> tuple[int, ...]:
        return (2, float_bits(self.df), float_bits(self.loc), float_bits(self.scale))


@dataclass(frozen=True)
class InverseGammaPosterior:
    """InverseGamma(shape, scale): density proportional to x^-(shape+1) exp(-scale/x)."""

    shape: float
    scale: float

    family = "time_to_event"

    def tail(self, t: float) -> float:
        """P(X > t) = P(Gamma(shape, rate=scale) < 1/t), via the lower incomplete gamma."""
        if t <= 0.0:
            return 1.0
        return float(special.gammainc(self.shape, self.scale / t))

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return self.scale / rng.gamma(self.shape, 1.0, size)

    def _seed_fields(self) -> tuple[int, ...]:
        return (3, float_bits(self.shape), float_bits(self.scale))


Posterior = BetaPosterior | StudentTPosterior | InverseGammaPosterior


# --------------------------------------------------------------------------
# Conjugate updates
# --------------------------------------------------------------------------

def binary_posterior(s: BinaryStats, prior: BinaryPrior) -> BetaPosterior:
    return BetaPosterior(prior.a + s.y, prior.b + s.n - s.y)


def continuous_posterior(s: ContinuousStats, prior: ContinuousPrior) -> StudentTPosterior:
    """Student-t marginal of the normal-inverse-gamma posterior for the mean."""
    if s.n < 1:
        raise ValueError("continuous posterior needs n >= 1 (prior-only query not supported)")
    n, n0 = s.n, prior.n0
    loc = (n * s.mean + n0 * prior.mean0) / (n + n0)
    a_n = prior.a + n / 2.0
    b_n = prior.b + 0.5 * s.sum_sq_dev + (s.mean - prior.mean0) ** 2 / (2.0 * (1.0 / n + 1.0 / n0))
    scale = math.sqrt(b_n / (a_n * (n + n0)))
    return StudentTPosterior(df=2.0 * a_n, loc=loc, scale=scale)


def tte_posterior(s: TimeToEventStats, prior: TimeToEventPrior) -> InverseGammaPosterior:
    """Posterior of the median: IG(a + events, (b + total time) * ln 2)."""
    return InverseGammaPosterior(prior.a + s.events, (prior.b + s.total_time) * LN2)


def linear_posterior(
    s: CategoricalStats, prior: CategoricalPrior, selector: tuple[int, ...]
) -> BetaPosterior:
    """Beta marginal of the Dirichlet posterior for a 0/1-selected sum of cell rates."""
    k = len(prior.alpha)
    if len(s.counts) != k or len(selector) != k:
        raise ValueError("selector, prior and counts must share the same length")
    if any(b not in (0, 1) for b in selector):
        raise ValueError("selector entries must be 0 or 1")
    if sum(selector) == 0 or sum(selector) == k:
        raise ValueError("selector must pick a strict, nonempty subset of cells")
    post = [a + x for a, x in zip(prior.alpha, s.counts)]
    a = sum(p for p, b in zip(post, selector) if b)
    b = sum(p for p, b in zip(post, selector) if not b)
    return BetaPosterior(a, b)


# --------------------------------------------------------------------------
# Tail probabilities
# --------------------------------------------------------------------------

def tail_prob_binary(s: BinaryStats, prior: BinaryPrior, t: float) -> float:
    """P(response rate > t) under Beta(a + y, b + n - y)."""
    if not 0.0 <= t <= 1.0:
        raise ValueError("threshold must lie in [0, 1]")
    return binary_posterior(s, prior).tail(t)


def tail_prob_continuous(s: ContinuousStats, prior: ContinuousPrior, t: float) -> float:
    """P(mean > t) under the Student-t marginal posterior."""
    return continuous_posterior(s, prior).tail(t)


def tail_prob_tte(s: TimeToEventStats, prior: TimeToEventPrior, t: float) -> float:
    """P(median survival > t months) under the inverse-gamma posterior."""
    if t <= 0.0:
        raise ValueError("threshold must be positive")
    return tte_posterior(s, prior).tail(t)


def tail_prob_linear(
    s: CategoricalStats, prior: CategoricalPrior, selector: tuple[int, ...], t: float
) -> float:
    """P(selected rate > t) under the Beta marginal of the Dirichlet posterior."""
    if not 0.0 <= t <= 1.0:
        raise ValueError("threshold must lie in [0, 1]")
    return linear_posterior(s, prior, selector).tail(t)


def tail_prob_difference(
    post_e: Posterior,
    post_c: Posterior,
    t: float,
    draws: int = DEFAULT_DIFFERENCE_DRAWS,
    seed: SeedLike = 0,
) -> float:
    """Monte Carlo estimate of P(effect_E - effect_C > t) from paired posterior draws.

    Deterministic for a fixed seed: the experimental draws always come first on
    the derived stream, then the control draws.
    """
    if post_e.family != post_c.family:
        raise ValueError(
            f"posterior families differ: {post_e.family} vs {post_c.family}"
        )
    if draws < 10_000:
        raise ValueError("need at least 10,000 draws")
    rng = stream(seed)
    e = post_e.sample(rng, draws)
    c = post_c.sample(rng, draws)
    return float(np.count_nonzero(e - c > t) / draws)


@lru_cache(maxsize=200_000)
def cached_difference_tail(
    post_e: Posterior, post_c: Posterior, t: float, draws: int
) -> float:
    """tail_prob_difference with the seed derived from the inputs themselves.

    Identical posterior pairs reuse the same stream (and the memoized value),
    which keeps trial simulation deterministic without threading a seed through
    every caller.
    """
    entropy = (
        9,
        *post_e._seed_fields(),
        *post_c._seed_fields(),
        float_bits(t),
        int(draws),
    )
    return tail_prob_difference(post_e, post_c, t, draws=draws, seed=entropy)
