"""Randomized 2:1 trial monitoring a response-rate difference.

With a concurrent control arm the monitored effect is
theta = rate_experimental - rate_control, and its posterior tail probabilities
come from paired draws of the two Beta posteriors.  Looks are tied to total
enrollment (30/45/60 of 75), which the 2:1 block allocation splits 20:10,
30:15, 40:20, and 50:25.

The second half turns on graduate (early superiority) stopping, whose bounds
relax toward lambda like an O'Brien-Fleming boundary as information accrues.
"""

import bop2dc as b
from bop2dc.calibrate import GridSpec

plan = b.TrialPlan(
    endpoint=b.binary_endpoint(),
    max_n=75,
    interim_looks=(30, 45, 60),
    arms=2,
    randomization_ratio=(2, 1),
)
profile = b.TargetProfile.single(theta_lrv=0.0, theta_cmv=0.2, theta_futile=0.0, theta_eff=0.2)
prior = b.BinaryPrior()
constraints = b.ConstraintSet(max_false_go=0.05, max_false_nogo=0.30, max_false_consider=0.20)
scenarios = (
    b.Scenario("futile", b.BinaryTruth(0.2), control=b.BinaryTruth(0.2)),
    b.Scenario("effective", b.BinaryTruth(0.4), control=b.BinaryTruth(0.2)),
)

grid = GridSpec((0.5, 0.99, 0.02), (0.01, 0.5, 0.02), (0.0, 1.0, 0.25), (0.0, 1.0, 0.25))
print(f"Calibrating over {grid.n_points():,} settings (2,000 shared trials per scenario)...")
res = b.calibrate(
    plan, prior, profile,
    constraints=constraints, scenarios=scenarios,
    grid=grid, n_sims=2000, seed=3, validate=False,
)
print(f"chosen thresholds: {res.params}")
print(f"metrics: { {k: round(v, 3) for k, v in res.metrics.items()} }")

print("\nFresh-seed OC (2,000 trials):")
for sc in scenarios + (b.Scenario("partial (0.28 vs 0.2)", b.BinaryTruth(0.28), control=b.BinaryTruth(0.2)),):
    oc = b.estimate_oc(sc, res.params, plan, prior, profile, 2000, seed=(5, len(sc.label)))
    print(
        f"  {sc.label:22s} go {oc.go_rate:6.1%}  no-go {oc.nogo_rate:6.1%}  "
        f"consider {oc.consider_rate:6.1%}  E[N] {oc.avg_sample_size:5.1f}"
    )

print("\nSame design with graduate stopping enabled, under the effective truth:")
plan_sup = b.TrialPlan(
    endpoint=b.binary_endpoint(), max_n=75, interim_looks=(30, 45, 60),
    arms=2, randomization_ratio=(2, 1), allow_superiority=True,
)
oc = b.estimate_oc(scenarios[1], res.params, plan_sup, prior, profile, 2000, seed=11)
print(
    f"  graduate {oc.graduate_rate:6.1%}  go {oc.go_rate:6.1%}  no-go {oc.nogo_rate:6.1%}  "
    f"consider {oc.consider_rate:6.1%}  E[N] {oc.avg_sample_size:5.1f}"
)
print("  Early superiority stops trade a little final-go probability for a smaller trial.")
