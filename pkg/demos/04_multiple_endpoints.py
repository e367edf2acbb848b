"""Multiple versus co-primary endpoints on one joint categorical model.

Two binary endpoints share a 2x2 joint cell distribution; each monitored rate
is a Beta-marginal of the Dirichlet posterior over cells.  The combination
rule is what differs:

* multiple ("any"): benefit on either endpoint suffices, so the final call is
  go if any endpoint is go and no-go only if all are;
* co-primary ("all"): every endpoint must succeed, e.g. efficacy must be high
  AND toxicity low, so any endpoint's no-go sinks the trial.
"""

import bop2dc as b

# --- multiple endpoints: response rate or 6-month event-free survival -------
spec = b.two_binary_endpoints("orr", "efs6", combination="any")
plan = b.TrialPlan(endpoint=spec, max_n=40, interim_looks=(10, 20, 30))
profile = b.TargetProfile(
    theta_lrv=(0.15, 0.2), theta_cmv=(0.2, 0.3),
    theta_futile=(0.15, 0.2), theta_eff=(0.25, 0.4),
    lower_is_better=(False, False),
)
prior = b.default_prior(spec)
design = b.DesignParams(lam_lrv=0.9, lam_cmv=0.25, gam_lrv=0.6, gam_cmv=0.6)

print("Multiple endpoints (go if ORR or EFS6 succeeds):")
for label, margins in [("futile", (0.15, 0.2)), ("one wins", (0.15, 0.4)), ("both win", (0.25, 0.4))]:
    sc = b.Scenario(label, b.CategoricalTruth.from_marginals(margins))
    oc = b.estimate_oc(sc, design, plan, prior, profile, 4000, seed=(1, len(label)))
    print(
        f"  {label:10s} go {oc.go_rate:6.1%}  no-go {oc.nogo_rate:6.1%}  "
        f"consider {oc.consider_rate:6.1%}  E[N] {oc.avg_sample_size:5.1f}"
    )

# --- co-primary: efficacy up, toxicity down ---------------------------------
spec2 = b.two_binary_endpoints("response", "toxicity", combination="all")
plan2 = b.TrialPlan(endpoint=spec2, max_n=40, interim_looks=(10, 20, 30))
profile2 = b.TargetProfile(
    theta_lrv=(0.3, 0.2), theta_cmv=(0.45, 0.15),
    theta_futile=(0.3, 0.2), theta_eff=(0.5, 0.1),
    lower_is_better=(False, True),  # toxicity: smaller is better
)
prior2 = b.default_prior(spec2)

print("\nCo-primary endpoints (go only if effective AND safe):")
for label, margins in [
    ("futile+toxic", (0.3, 0.2)),
    ("effective but toxic", (0.5, 0.25)),
    ("effective and safe", (0.5, 0.1)),
]:
    sc = b.Scenario(label, b.CategoricalTruth.from_marginals(margins))
    oc = b.estimate_oc(sc, design, plan2, prior2, profile2, 4000, seed=(2, len(label)))
    print(
        f"  {label:20s} go {oc.go_rate:6.1%}  no-go {oc.nogo_rate:6.1%}  "
        f"consider {oc.consider_rate:6.1%}  E[N] {oc.avg_sample_size:5.1f}"
    )

print(
    "\nAn effective-but-toxic drug sails through the multiple rule "
    "yet fails the co-primary one; that asymmetry is the entire point."
)
