"""
Evaluating the risk upper bound
===============================

The bound adds a within-group connectivity term, an outlier-chain term and
a size-concentration tail. Its leading constant ``lam`` depends on the
geometry of the supports and has to be supplied; here it is left at 1.
"""
import numpy as np

from osl.theory import (ModelConstants, a6_epsilon_bound, constants_ab, eta_thresholds,
                        minimize_bound, risk_bound)

weights = [1 / 3, 1 / 3, 1 / 3]
print("largest admissible epsilon:", a6_epsilon_bound(weights))

c = ModelConstants.from_weights(weights, epsilon=0.001, delta=0.35, n=100_000, d=2, big_d=2,
                                eta=0.05)
print("eta0, eta1:", eta_thresholds(c))
print("a, b:", constants_ab(c))

###############################################################################
# Small radii leave groups disconnected, large ones let outlier chains
# bridge two groups. The bound on a grid of radii inside (0, delta), and its grid minimizer.

for r in (0.01, 0.02, 0.03, 0.05, 0.1):
    print(f"r={r:.2f}  bound={risk_bound(r, c):.4g}")
grid = np.linspace(0.001, 0.349, 500)
print("minimizer:", minimize_bound(c, grid))
