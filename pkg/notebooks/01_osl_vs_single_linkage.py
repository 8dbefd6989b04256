"""
OSL versus classical single linkage
===================================

Seven points on a line: two tight triples and one far outlier. Classical
single linkage asked for two clusters spends one of them on the outlier.
OSL instead picks the cut radius where the second largest cluster is as
big as possible, and pools the outlier.
"""
import numpy as np

from osl import assign, build_dendrogram, clusters_at_radius, osl_select, sl_select

# integer coordinates keep every distance exact
X = np.array([0.0, 1.0, 2.0, 10.0, 11.0, 12.0, 50.0])
d = build_dendrogram(X)
print("merge levels:", d.levels)
print("clusters per level:", d.n_clusters)

###############################################################################
# The selection trace lists, for every level, how many clusters exist and
# the size of the second largest one.

trace = osl_select(d, m=2)
for r, count, size in trace.rows():
    mark = "<-" if r == trace.radius else ""
    print(f"r={r:5.1f}  clusters={count}  2nd largest={size} {mark}")

###############################################################################
# Labels: 1 and 2 for the two retained clusters, 0 for the outlier pool.

r_osl = trace.radius
r_sl = sl_select(d, m=2)
print("OSL labels:", assign(d, r_osl, 2).labels, "radius", r_osl)
print("SL  labels:", assign(d, r_sl, 2).labels, "radius", r_sl)

###############################################################################
# Any radius can be queried; the partition only changes at the levels.

for r in (0.5, 1.0, 5.0):
    print(r, [c.tolist() for c in clusters_at_radius(d, r).clusters])
