"""The HTTP workflow the browser front end drives, exercised in-process.

Validate a config (every default echoed back), submit a calibration job, poll
its progress, fetch the result, and ask for the decision table.  `bop2dc
serve` exposes exactly these endpoints over the network.
"""

import json
import time

from fastapi.testclient import TestClient

from bop2dc.service import create_app

client = TestClient(create_app(max_workers=2))

config = {
    "endpoint": {"family": "binary"},
    "plan": {"max_n": 40, "interim_looks": [10, 20, 30]},
    "profile": {"theta_lrv": 0.2, "theta_cmv": 0.3, "theta_futile": 0.2, "theta_eff": 0.4},
    "grid": {
        "lambda_lrv": [0.5, 0.99, 0.02],
        "lambda_cmv": [0.01, 0.5, 0.02],
        "gamma_lrv": [0.0, 1.0, 0.25],
        "gamma_cmv": [0.0, 1.0, 0.25],
    },
    "simulation": {"n_sims": 2000, "seed": 42},
}

print("1. validate: defaults get applied and echoed")
echo = client.post("/v1/validate", json=config).json()["config"]
print("   priors echoed as:", echo["priors"])
print("   constraints echoed as:", echo["constraints"])

print("\n2. a bad config comes back with field paths")
bad = client.post("/v1/validate", json={**config, "plan": {"max_n": 0}})
print("  ", bad.status_code, bad.json()["errors"])

print("\n3. submit a calibration job and poll")
job = client.post("/v1/jobs/calibrate", json=config).json()["job"]
print("   submitted:", job["id"], job["state"])
while True:
    rec = client.get(f"/v1/jobs/{job['id']}").json()
    print(f"   progress {rec['progress']:.0%} ({rec['state']})")
    if rec["state"] in ("done", "failed"):
        break
    time.sleep(0.5)

print("\n4. fetch the result")
result = json.loads(client.get(f"/v1/jobs/{job['id']}/result").content)
print("   feasible:", result["result"]["feasible"])
print("   params:", result["result"]["params"])
print("   metrics:", {k: round(v, 3) for k, v in result["result"]["metrics"].items()})

print("\n5. decision table for the calibrated design")
table = client.post(
    "/v1/decision-table",
    json={"config": config, "design": result["result"]["params"]},
).json()["decision_table"]
print("   looks:", table["looks"])
print("   stop bounds:", table["stop_bounds"])
print("   go at final if responders >=", table["go_bound"])
