"""Trial generation, look execution, Monte Carlo OC, and the exact DP oracle."""

import math
from collections import Counter

import numpy as np
import pytest
from scipy import stats as sps

import bop2dc as b
from bop2dc.simulate import _stats_at_look


# --------------------------------------------------------------------------
# Data generation
# --------------------------------------------------------------------------

def test_degenerate_bernoulli_gives_all_zeros(binary_plan):
    data = b.generate_trial_data(b.Scenario("null", b.BinaryTruth(0.0)), binary_plan, seed=1)
    assert data.outcomes.sum() == 0
    assert data.outcomes.size == 40


def test_generation_deterministic_per_seed(binary_plan):
    sc = b.Scenario("s", b.BinaryTruth(0.3))
    d1 = b.generate_trial_data(sc, binary_plan, seed=9)
    d2 = b.generate_trial_data(sc, binary_plan, seed=9)
    d3 = b.generate_trial_data(sc, binary_plan, seed=10)
    assert np.array_equal(d1.outcomes, d2.outcomes)
    assert not np.array_equal(d1.outcomes, d3.outcomes)


def test_tte_generator_median_large_sample():
    plan = b.TrialPlan(endpoint=b.tte_endpoint(), max_n=10**6, accrual_per_month=1.0)
    sc = b.Scenario("m8", b.TimeToEventTruth(8.0))
    data = b.generate_trial_data(sc, plan, seed=4)
    med = float(np.median(data.outcomes))
    assert 8.0 * 0.99 <= med <= 8.0 * 1.01


def test_two_to_one_allocation_exact_counts():
    plan = b.TrialPlan(
        endpoint=b.binary_endpoint(), max_n=75, interim_looks=(30, 45, 60),
        arms=2, randomization_ratio=(2, 1),
    )
    sc = b.Scenario("s", b.BinaryTruth(0.4), control=b.BinaryTruth(0.2))
    data = b.generate_trial_data(sc, plan, seed=0)
    assert int((data.arm == 1).sum()) == 50
    assert int((data.arm == 0).sum()) == 25
    for n, want_e in [(30, 20), (45, 30), (60, 40)]:
        assert int((data.arm[:n] == 1).sum()) == want_e


def test_enrollment_spacing_follows_accrual_rate():
    plan = b.TrialPlan(endpoint=b.tte_endpoint(), max_n=5, accrual_per_month=2.0)
    data = b.generate_trial_data(b.Scenario("s", b.TimeToEventTruth(6.0)), plan, seed=1)
    assert np.allclose(data.enroll_months, [0.0, 0.5, 1.0, 1.5, 2.0])


def test_family_mismatch_rejected(binary_plan):
    with pytest.raises(ValueError):
        b.generate_trial_data(b.Scenario("s", b.TimeToEventTruth(6.0)), binary_plan, seed=1)


def test_categorical_generator_matches_joint():
    spec = b.two_binary_endpoints("eff", "tox", "all")
    plan = b.TrialPlan(endpoint=spec, max_n=40)
    truth = b.CategoricalTruth.from_marginals((0.5, 0.3))
    counts = np.zeros(4)
    for i in range(200):
        data = b.generate_trial_data(b.Scenario("s", truth), plan, seed=(3, i))
        counts += np.bincount(data.outcomes, minlength=4)
    freq = counts / counts.sum()
    assert np.allclose(freq, truth.joint, atol=0.02)


def test_marginal_constructor_independence_and_odds_ratio():
    ind = b.CategoricalTruth.from_marginals((0.4, 0.25))
    assert ind.joint[0] == pytest.approx(0.1)
    assert ind.marginal((1, 1, 0, 0)) == pytest.approx(0.4)
    assert ind.marginal((1, 0, 1, 0)) == pytest.approx(0.25)
    coupled = b.CategoricalTruth.from_marginals((0.4, 0.25), odds_ratio=3.0)
    assert coupled.marginal((1, 1, 0, 0)) == pytest.approx(0.4, abs=1e-12)
    assert coupled.marginal((1, 0, 1, 0)) == pytest.approx(0.25, abs=1e-12)
    p11, p12, p21, p22 = coupled.joint
    assert (p11 * p22) / (p12 * p21) == pytest.approx(3.0, rel=1e-9)


# --------------------------------------------------------------------------
# TTE censoring bookkeeping
# --------------------------------------------------------------------------

def test_tte_interim_censoring_accounts_every_patient():
    plan = b.TrialPlan(
        endpoint=b.tte_endpoint(), max_n=40, interim_looks=(10, 20, 30),
        accrual_per_month=1.0, followup_months=12.0,
    )
    sc = b.Scenario("s", b.TimeToEventTruth(6.0))
    data = b.generate_trial_data(sc, plan, seed=11)
    for j, n in enumerate(plan.looks):
        stats, _ = _stats_at_look(data, plan, j)
        tau = data.enroll_months[n - 1] + (plan.followup_months if n == plan.max_n else 0.0)
        max_patient_time = float(np.sum(np.maximum(tau - data.enroll_months[:n], 0.0)))
        assert stats.n == n
        assert 0 <= stats.events <= n
        assert 0.0 <= stats.total_time <= max_patient_time + 1e-9


# --------------------------------------------------------------------------
# run_trial
# --------------------------------------------------------------------------

def test_vacuous_thresholds_always_go(binary_plan, binary_prior, binary_profile):
    design = b.DesignParams(lam_lrv=1e-9, lam_cmv=1e-9)
    sc = b.Scenario("s", b.BinaryTruth(0.3))
    for i in range(5):
        data = b.generate_trial_data(sc, binary_plan, seed=(1, i))
        res = b.run_trial(data, design, binary_plan, binary_prior, binary_profile)
        assert res.decision is b.Decision.GO
        assert res.n_used == 40


def test_all_zero_data_stops_at_first_look(binary_plan, binary_prior, binary_profile, sample_design):
    # With zero responders in ten patients the posterior is Beta(0.1, 10.1);
    # both monitoring probabilities sit below the calibrated first-look cutoffs.
    p1 = b.tail_prob_binary(b.BinaryStats(10, 0), binary_prior, 0.2)
    p2 = b.tail_prob_binary(b.BinaryStats(10, 0), binary_prior, 0.3)
    c1, c2 = b.interim_cutoffs(sample_design, 10, 40)
    assert p1 < c1 and p2 < c2
    data = b.generate_trial_data(b.Scenario("null", b.BinaryTruth(0.0)), binary_plan, seed=2)
    res = b.run_trial(data, sample_design, binary_plan, binary_prior, binary_profile)
    assert res.decision is b.Decision.NO_GO
    assert res.stopped_at_look == 0
    assert res.n_used == 10


def test_no_interims_equals_final_rule_directly(binary_prior, binary_profile, sample_design):
    plan = b.TrialPlan(endpoint=b.binary_endpoint(), max_n=40)
    data = b.generate_trial_data(b.Scenario("s", b.BinaryTruth(0.35)), plan, seed=3)
    res = b.run_trial(data, sample_design, plan, binary_prior, binary_profile)
    y = int(data.outcomes.sum())
    p1 = b.tail_prob_binary(b.BinaryStats(40, y), binary_prior, 0.2)
    p2 = b.tail_prob_binary(b.BinaryStats(40, y), binary_prior, 0.3)
    assert res.decision is b.final_decision(p1, p2, sample_design)


# --------------------------------------------------------------------------
# estimate_oc
# --------------------------------------------------------------------------

def test_estimate_oc_matches_per_trial_loop(binary_plan, binary_prior, binary_profile, sample_design, futile_scenario):
    oc = b.estimate_oc(futile_scenario, sample_design, binary_plan, binary_prior, binary_profile, 1000, seed=21)
    results = b.trial_results(futile_scenario, sample_design, binary_plan, binary_prior, binary_profile, 1000, seed=21)
    counts = Counter(r.decision for r in results)
    assert oc.go_rate == counts[b.Decision.GO] / 1000
    assert oc.nogo_rate == counts[b.Decision.NO_GO] / 1000
    assert oc.consider_rate == counts[b.Decision.CONSIDER] / 1000
    assert oc.avg_sample_size == pytest.approx(sum(r.n_used for r in results) / 1000)


def test_oc_rates_sum_to_one_and_counts_are_integers(binary_plan, binary_prior, binary_profile, sample_design, effective_scenario):
    oc = b.estimate_oc(effective_scenario, sample_design, binary_plan, binary_prior, binary_profile, 1500, seed=8)
    total = oc.go_rate + oc.nogo_rate + oc.consider_rate + oc.graduate_rate
    assert total == pytest.approx(1.0, abs=1e-12)
    for rate in (oc.go_rate, oc.nogo_rate, oc.consider_rate, oc.graduate_rate):
        assert (rate * 1500) == pytest.approx(round(rate * 1500), abs=1e-9)


def test_estimate_oc_deterministic(binary_plan, binary_prior, binary_profile, sample_design, futile_scenario):
    a = b.estimate_oc(futile_scenario, sample_design, binary_plan, binary_prior, binary_profile, 1000, seed=5)
    c = b.estimate_oc(futile_scenario, sample_design, binary_plan, binary_prior, binary_profile, 1000, seed=5)
    assert a == c


def test_never_stopping_design_uses_full_sample(binary_plan, binary_prior, binary_profile, futile_scenario):
    design = b.DesignParams(lam_lrv=1e-12, lam_cmv=1e-12)
    oc = b.estimate_oc(futile_scenario, design, binary_plan, binary_prior, binary_profile, 1000, seed=6)
    assert oc.avg_sample_size == 40.0


def test_estimate_oc_requires_enough_sims(binary_plan, binary_prior, binary_profile, sample_design, futile_scenario):
    with pytest.raises(ValueError):
        b.estimate_oc(futile_scenario, sample_design, binary_plan, binary_prior, binary_profile, 500, seed=1)


# --------------------------------------------------------------------------
# Exact DP oracle
# --------------------------------------------------------------------------

def test_exact_single_look_matches_binomial_tail_sums(binary_prior, binary_profile):
    # no interims: the DP must reduce to direct binomial sums over the decision sets
    plan = b.TrialPlan(endpoint=b.binary_endpoint(), max_n=25)
    design = b.DesignParams(0.85, 0.25, 0.0, 0.0)
    theta = 0.3
    oc = b.exact_oc_binary_single_arm(b.Scenario("s", b.BinaryTruth(theta)), design, plan, binary_prior, binary_profile)
    go = nogo = 0.0
    for y in range(26):
        p1 = b.tail_prob_binary(b.BinaryStats(25, y), binary_prior, 0.2)
        p2 = b.tail_prob_binary(b.BinaryStats(25, y), binary_prior, 0.3)
        w = sps.binom.pmf(y, 25, theta)
        dec = b.final_decision(p1, p2, design)
        if dec is b.Decision.GO:
            go += w
        elif dec is b.Decision.NO_GO:
            nogo += w
    assert oc.go_rate == pytest.approx(go, abs=1e-12)
    assert oc.nogo_rate == pytest.approx(nogo, abs=1e-12)
    assert oc.consider_rate == pytest.approx(1 - go - nogo, abs=1e-12)
    assert oc.avg_sample_size == pytest.approx(25.0, abs=1e-9)


def test_exact_rates_sum_to_one(binary_plan, binary_prior, binary_profile, sample_design):
    for theta in (0.1, 0.2, 0.35, 0.5):
        oc = b.exact_oc_binary_single_arm(
            b.Scenario("s", b.BinaryTruth(theta)), sample_design, binary_plan, binary_prior, binary_profile
        )
        assert oc.go_rate + oc.nogo_rate + oc.consider_rate + oc.graduate_rate == pytest.approx(1.0, abs=1e-12)


def test_exact_vs_mc_on_random_designs(binary_plan, binary_prior, binary_profile):
    rng = np.random.default_rng(777)
    for k in range(3):
        design = b.DesignParams(
            lam_lrv=float(rng.uniform(0.6, 0.98)),
            lam_cmv=float(rng.uniform(0.05, 0.45)),
            gam_lrv=float(rng.uniform(0, 1)),
            gam_cmv=float(rng.uniform(0, 1)),
        )
        theta = float(rng.uniform(0.1, 0.5))
        sc = b.Scenario("s", b.BinaryTruth(theta))
        exact = b.exact_oc_binary_single_arm(sc, design, binary_plan, binary_prior, binary_profile)
        mc = b.estimate_oc(sc, design, binary_plan, binary_prior, binary_profile, 4000, seed=(60, k))
        for name in ("go_rate", "nogo_rate", "consider_rate"):
            ex, est = getattr(exact, name), getattr(mc, name)
            se = math.sqrt(max(ex * (1 - ex), 1e-9) / 4000)
            assert abs(ex - est) <= 3 * se + 1e-9, f"{name}: exact={ex} mc={est}"


def test_exact_go_rate_monotone_in_true_theta(binary_plan, binary_prior, binary_profile, sample_design):
    thetas = np.linspace(0.05, 0.6, 12)
    go = []
    nogo = []
    for th in thetas:
        oc = b.exact_oc_binary_single_arm(
            b.Scenario("s", b.BinaryTruth(float(th))), sample_design, binary_plan, binary_prior, binary_profile
        )
        go.append(oc.go_rate)
        nogo.append(oc.nogo_rate)
    assert all(x <= y + 1e-12 for x, y in zip(go, go[1:]))
    assert all(x >= y - 1e-12 for x, y in zip(nogo, nogo[1:]))


def test_adding_interim_look_cannot_raise_expected_n(binary_prior, binary_profile, sample_design, futile_scenario):
    base = b.TrialPlan(endpoint=b.binary_endpoint(), max_n=40, interim_looks=(20,))
    more = b.TrialPlan(endpoint=b.binary_endpoint(), max_n=40, interim_looks=(10, 20))
    oc_base = b.exact_oc_binary_single_arm(futile_scenario, sample_design, base, binary_prior, binary_profile)
    oc_more = b.exact_oc_binary_single_arm(futile_scenario, sample_design, more, binary_prior, binary_profile)
    assert oc_more.avg_sample_size <= oc_base.avg_sample_size + 1e-12


def test_exact_requires_binary_single_arm(binary_prior, binary_profile, sample_design):
    plan = b.TrialPlan(
        endpoint=b.binary_endpoint(), max_n=40, arms=2, randomization_ratio=(1, 1)
    )
    sc = b.Scenario("s", b.BinaryTruth(0.3), control=b.BinaryTruth(0.2))
    with pytest.raises(ValueError):
        b.exact_oc_binary_single_arm(sc, sample_design, plan, binary_prior, binary_profile)


# --------------------------------------------------------------------------
# Direction handling (lower is better)
# --------------------------------------------------------------------------

def test_lower_is_better_reflection_symmetry(binary_plan):
    """Monitoring a toxicity rate below its bars is the same trial as monitoring
    the complement rate above the mirrored bars, with the prior swapped."""
    design = b.DesignParams(0.8, 0.3, 0.5, 0.5)
    tox_profile = b.TargetProfile.single(0.2, 0.15, 0.2, 0.1, lower_is_better=True)
    mirror_profile = b.TargetProfile.single(0.8, 0.85, 0.8, 0.9)
    tox_prior = b.BinaryPrior(a=0.1, b=0.4)
    mirror_prior = b.BinaryPrior(a=0.4, b=0.1)
    for theta_tox in (0.08, 0.15, 0.25):
        oc_tox = b.exact_oc_binary_single_arm(
            b.Scenario("s", b.BinaryTruth(theta_tox)), design, binary_plan, tox_prior, tox_profile
        )
        oc_mirror = b.exact_oc_binary_single_arm(
            b.Scenario("s", b.BinaryTruth(1 - theta_tox)), design, binary_plan, mirror_prior, mirror_profile
        )
        assert oc_tox.go_rate == pytest.approx(oc_mirror.go_rate, abs=1e-10)
        assert oc_tox.nogo_rate == pytest.approx(oc_mirror.nogo_rate, abs=1e-10)
        assert oc_tox.avg_sample_size == pytest.approx(oc_mirror.avg_sample_size, abs=1e-8)


# --------------------------------------------------------------------------
# Multi-endpoint and RCT walks
# --------------------------------------------------------------------------

def test_multiple_endpoint_trial_runs_and_aggregates():
    spec = b.two_binary_endpoints("orr", "efs6", "any")
    plan = b.TrialPlan(endpoint=spec, max_n=40, interim_looks=(20,))
    profile = b.TargetProfile(
        theta_lrv=(0.15, 0.2), theta_cmv=(0.2, 0.3),
        theta_futile=(0.15, 0.2), theta_eff=(0.25, 0.4),
        lower_is_better=(False, False),
    )
    prior = b.default_prior(spec)
    design = b.DesignParams(0.9, 0.3, 0.5, 0.5)
    sc = b.Scenario("eff", b.CategoricalTruth.from_marginals((0.25, 0.4)))
    oc = b.estimate_oc(sc, design, plan, prior, profile, 1000, seed=17)
    assert oc.go_rate + oc.nogo_rate + oc.consider_rate == pytest.approx(1.0, abs=1e-12)
    assert oc.go_rate > 0.3  # effective truth should mostly clear at least one endpoint


def test_coprimary_stricter_than_multiple():
    profile = b.TargetProfile(
        theta_lrv=(0.3, 0.2), theta_cmv=(0.45, 0.15),
        theta_futile=(0.3, 0.2), theta_eff=(0.5, 0.1),
        lower_is_better=(False, True),
    )
    design = b.DesignParams(0.85, 0.3, 0.5, 0.5)
    truth = b.CategoricalTruth.from_marginals((0.5, 0.1))
    results = {}
    for comb in ("any", "all"):
        spec = b.two_binary_endpoints("eff", "tox", comb)
        plan = b.TrialPlan(endpoint=spec, max_n=40, interim_looks=(20,))
        oc = b.estimate_oc(
            b.Scenario("s", truth), design, plan, b.default_prior(spec), profile, 1000, seed=23
        )
        results[comb] = oc
    assert results["all"].go_rate <= results["any"].go_rate


def test_three_decision_interim_flag(binary_prior, binary_profile):
    plan = b.TrialPlan(
        endpoint=b.binary_endpoint(), max_n=40, interim_looks=(10, 20, 30),
        three_decision_interim=True,
    )
    design = b.DesignParams(0.8, 0.3, 1.0, 1.0)
    sc = b.Scenario("strong", b.BinaryTruth(0.6))
    oc = b.estimate_oc(sc, design, plan, binary_prior, binary_profile, 1000, seed=41)
    assert oc.graduate_rate > 0.5  # strong effect should clear the interim go region
    assert oc.go_rate + oc.nogo_rate + oc.consider_rate + oc.graduate_rate == pytest.approx(1.0, abs=1e-12)
    # trial-level walk agrees with the paths-based tally
    results = b.trial_results(sc, design, plan, binary_prior, binary_profile, 1000, seed=41)
    assert oc.graduate_rate == sum(r.decision is b.Decision.GRADUATE for r in results) / 1000
    with pytest.raises(ValueError):
        b.TrialPlan(
            endpoint=b.binary_endpoint(), max_n=40,
            allow_superiority=True, three_decision_interim=True,
        )


def test_rct_paths_and_superiority():
    plan = b.TrialPlan(
        endpoint=b.binary_endpoint(), max_n=36, interim_looks=(12, 24),
        arms=2, randomization_ratio=(1, 1), allow_superiority=True,
    )
    profile = b.TargetProfile.single(0.0, 0.2, 0.0, 0.3)
    prior = b.BinaryPrior()
    design = b.DesignParams(0.8, 0.3, 0.5, 0.5)
    sc = b.Scenario("big effect", b.BinaryTruth(0.85), control=b.BinaryTruth(0.15))
    oc = b.estimate_oc(sc, design, plan, prior, profile, 1000, seed=31, draws=20_000)
    assert oc.graduate_rate > 0.5  # overwhelming separation should graduate early
    total = oc.go_rate + oc.nogo_rate + oc.consider_rate + oc.graduate_rate
    assert total == pytest.approx(1.0, abs=1e-12)
