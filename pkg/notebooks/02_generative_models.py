"""
Built-in generative models
==========================

Each model mixes M groups, sampled uniformly on their supports, with an
outlier law of weight epsilon. Samples carry their true labels (0 for
outliers), which the risk experiments score against.
"""
import numpy as np

from osl.datagen import (build_model, contains, example2_model, gaussian_noise_sine_model,
                         sample, sine_highdim_model, validate_gaps)

for name in ("squares", "circles", "sine"):
    for case in ("easy", "tricky"):
        m = build_model(name, case, epsilon=0.1)
        print(f"{m.name:15s} weights={np.round(m.weights, 3)} delta={m.delta} "
              f"mesh gap={validate_gaps(m):.4f}")

###############################################################################
# Sampling is a pure function of (model, n, seed).

m = build_model("squares", "easy", epsilon=0.2)
s = sample(m, 1000, seed=3)
print("counts per label:", np.bincount(s.truth))
print("same again:", np.array_equal(s.points, sample(m, 1000, seed=3).points))

###############################################################################
# Every point lies on the support of its label; outliers avoid all of them.

inside = np.array([contains(sup, s.points) for sup in m.supports])
print("groups on their supports:",
      all(inside[k - 1, s.truth == k].all() for k in range(1, m.m + 1)))
print("outliers off the supports:", not inside[:, s.truth == 0].any())

###############################################################################
# Variants: extra ambient dimensions, Gaussian noise, and two Dirac masses.

hd = sample(sine_highdim_model(5), 500, seed=0)
print("high-D group points, coordinates 3..5:", np.unique(hd.points[hd.truth > 0, 2:]))
g = sample(gaussian_noise_sine_model(0.25, 0.5), 500, seed=0)
print("gaussian outliers, mean:", g.points[g.truth == 0].mean(axis=0).round(2))
e2 = sample(example2_model(0.1), 200, seed=0)
print("example 2 values at the atoms:", np.isin(e2.points[e2.truth > 0], [-1, 1]).all())

###############################################################################
# Models round-trip through JSON, the format the command line reads.

doc = m.to_json(indent=1)
print(doc[:200], "...")
