"""
ARI on random subsamples
========================

A labeled dataset is repeatedly subsampled without replacement (75% of the
points), clustered, and compared to the restricted truth with the adjusted
Rand index. The outlier pool counts as one more class on both sides.
"""
import numpy as np

from osl import LabeledSample, adjusted_rand_index
from osl.evaluation import subsample_bench

rng = np.random.default_rng(0)
centers = np.array([[0.0, 0.0], [4.0, 0.0], [2.0, 3.5]])
truth = np.repeat([1, 2, 3], 100)
groups = centers[truth - 1] + rng.normal(0, 0.4, size=(300, 2))
noise = rng.uniform(-2, 6, size=(30, 2))
data = LabeledSample(points=np.vstack([groups, noise]), truth=np.r_[truth, np.zeros(30, int)])

print("ARI worked example:", round(adjusted_rand_index([1, 1, 1, 2, 2, 2], [1, 1, 2, 2, 2, 2]), 5))

for algo in ("osl", "sl"):
    st = subsample_bench(data, algo, m=3, B=100, fraction=0.75, seed=0)
    print(f"{algo}: {st.n_sub} points per replication, mean ARI {st.mean:.3f} "
          f"(sd {st.sd:.3f}), {1e3 * st.mean_seconds:.2f} ms per clustering")
