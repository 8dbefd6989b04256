"""Outlier-robust single linkage clustering.

The cut radius of the single-linkage dendrogram is chosen to maximize the
size of the m-th largest cluster; the m largest clusters are kept and the
remaining points form an outlier pool labeled 0.
"""
from .errors import (DegenerateModelError, InfeasibleModelError, InvalidInputError,
                     NoValidRadiusError, OSLError)
from .linkage import Dendrogram, Partition, build_dendrogram, clusters_at_radius, order_clusters
from .selectors import (Clustering, SelectionTrace, assign, osl, osl_select, single_linkage,
                        sl_select)
from .datagen import LabeledSample, MixtureModel, build_model, sample, stream
from .evaluation import (AriStats, RiskEstimate, adjusted_rand_index, estimate_risk,
                         exact_recovery, subsample_bench)

__version__ = "0.1.0"

__all__ = [
    "AriStats", "Clustering", "DegenerateModelError", "Dendrogram", "InfeasibleModelError",
    "InvalidInputError", "LabeledSample", "MixtureModel", "NoValidRadiusError", "OSLError",
    "Partition", "RiskEstimate", "SelectionTrace", "adjusted_rand_index", "assign",
    "build_dendrogram", "build_model", "clusters_at_radius", "estimate_risk", "exact_recovery",
    "order_clusters", "osl", "osl_select", "sample", "single_linkage", "sl_select", "stream",
    "subsample_bench",
]
