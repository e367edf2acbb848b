"""Single-arm binary endpoint, start to finish.

A 40-patient trial monitors a response rate against a historical control of
20% (the statistical bar) and a clinically meaningful 30% (the clinical bar),
with futility looks after 10, 20, and 30 patients.  We calibrate the four
thresholds both ways, inspect the resulting decision table, and check the
exact operating characteristics across a sweep of true response rates.
"""

import bop2dc as b

plan = b.TrialPlan(endpoint=b.binary_endpoint(), max_n=40, interim_looks=(10, 20, 30))
profile = b.TargetProfile.single(theta_lrv=0.2, theta_cmv=0.3, theta_futile=0.2, theta_eff=0.4)
prior = b.BinaryPrior()  # vague: 0.2 patients of prior information

print("Searching the default grid (302,500 settings, exact evaluation)...")
optimal = b.calibrate(plan, prior, profile, objective="optimal", validate=False)
minn = b.calibrate(plan, prior, profile, objective="minN", validate=False)

for label, res in [("optimal", optimal), ("minN", minn)]:
    m = res.metrics
    print(
        f"\n{label}: lambda_lrv={res.params.lam_lrv:.2f} lambda_cmv={res.params.lam_cmv:.2f} "
        f"gamma_lrv={res.params.gam_lrv:.1f} gamma_cmv={res.params.gam_cmv:.1f}"
    )
    print(
        f"  false-go {m['fgr']:.1%}  false-no-go {m['fngr']:.1%}  "
        f"correct-go {m['cgr']:.1%}  false-consider {m['fcr']:.1%}  "
        f"E[N | futile] {m['expected_n_futile']:.1f}"
    )

table = b.decision_table_binary(optimal.params, plan, prior, profile)
print("\nDecision table for the optimal design (responder counts):")
for j, n in enumerate(table.looks[:-1]):
    print(f"  at n={n}: stop for futility if responders <= {table.stop_bounds[j]}")
lo, hi = table.consider_range
print(
    f"  at n={table.looks[-1]}: no-go <= {table.stop_bounds[-1]}, "
    f"consider {lo}..{hi}, go >= {table.go_bound}"
)

print("\nExact OC across true response rates:")
rows = []
for theta in (0.2, 0.25, 0.28, 0.3, 0.35, 0.4):
    sc = b.Scenario(f"true rate {theta}", b.BinaryTruth(theta))
    oc = b.exact_oc_binary_single_arm(sc, optimal.params, plan, prior, profile)
    rows.append((sc, oc))
    print(
        f"  theta={theta:.2f}: go {oc.go_rate:6.1%}  no-go {oc.nogo_rate:6.1%}  "
        f"consider {oc.consider_rate:6.1%}  E[N] {oc.avg_sample_size:5.1f}"
    )

print("\nCSV export of the same table:")
print(b.render_oc_table(rows, plan, profile, design_label="optimal").to_csv())
