"""
Monte Carlo clustering risk
===========================

The risk is the chance that some true group is not recovered whole by one
predicted cluster. Replication b draws its sample from its own Philox
stream, so estimates do not depend on the number of worker threads.
"""
import numpy as np

from osl.datagen import squares_model
from osl.evaluation import estimate_risks

B = 200
print(f"{'eps':>5} {'n':>5}  {'OSL':>14}  {'SL':>14}")
for eps in (0.0, 0.05, 0.1, 0.2):
    for n in (200, 500):
        model = squares_model("easy", eps)
        r = estimate_risks(model, ["osl", "sl"], model.m, n, B, seed=0)
        print(f"{eps:5.2f} {n:5d}  {str(r['osl']):>14}  {str(r['sl']):>14}")

###############################################################################
# Harness sanity: a stub returning the truth never fails, one returning a
# single cluster always fails.

model = squares_model("tricky", 0.2)
r = estimate_risks(model, ["truth", "one-cluster"], 3, 300, 50, seed=1)
print({k: v.risk for k, v in r.items()})

###############################################################################
# Thread count has no effect on the result.

a = estimate_risks(model, ["osl"], 3, 300, 64, seed=2, workers=1)
b = estimate_risks(model, ["osl"], 3, 300, 64, seed=2, workers=4)
print("identical:", a == b)
