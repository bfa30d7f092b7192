"""Nonparametric estimators of differential (Shannon) entropy.

Three families are provided: sample-spacing estimators for univariate
data (:mod:`~diffentropy.spacing`), kernel-density plug-in and quantile
estimators (:mod:`~diffentropy.kde`) and k-nearest-neighbour estimators
for data in R^d (:mod:`~diffentropy.knn`). :mod:`~diffentropy.simlab`
benchmarks any of them on laws with known entropy.
"""

from .errors import (
    AllReplicatesFailed,
    ConfigError,
    DataError,
    DomainError,
    EntropyError,
    EstimatorError,
)
from .kde import KdeEstimatorId, KdeParams, estimate_kde, kde_pdf
from .knn import KnnEstimatorId, estimate_knn, knn_distance
from .registry import evaluate
from .samples import OrderedSample, PointCloud, read_points, read_sample
from .simlab import GridCell, MetricRow, TestDistribution, run_cell, true_entropy
from .spacing import (
    SpacingEstimatorId,
    SpacingParams,
    estimate_spacing,
    optimal_window,
    window_set,
)
from .specfn import digamma, log_gamma, unit_ball_volume

__version__ = "0.1.0"

__all__ = [
    "AllReplicatesFailed", "ConfigError", "DataError", "DomainError", "EntropyError",
    "EstimatorError", "GridCell", "KdeEstimatorId", "KdeParams", "KnnEstimatorId",
    "MetricRow", "OrderedSample", "PointCloud", "SpacingEstimatorId", "SpacingParams",
    "TestDistribution", "digamma", "estimate_kde", "estimate_knn", "estimate_spacing",
    "evaluate", "kde_pdf", "knn_distance", "log_gamma", "optimal_window", "read_points",
    "read_sample", "run_cell", "true_entropy", "unit_ball_volume", "window_set",
]
