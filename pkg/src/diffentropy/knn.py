"""k-nearest-neighbour entropy estimators for samples in R^d.

All estimators use Euclidean k-th neighbour distances. HVIC and HN are
base-2 formulas and return bits; the rest return nats.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DuplicatePoint, KTooLarge
from .kdtree import knn
from .samples import as_cloud
from .specfn import EULER_GAMMA, digamma, harmonic, log_gamma, unit_ball_volume

LN2 = math.log(2.0)


class KnnEstimatorId(str, enum.Enum):
    HKL = "HKL"
    HVIC = "HVIC"
    HS = "HS"
    HN = "HN"
    HK = "HK"
    HL = "HL"


FIXED_K = frozenset({KnnEstimatorId.HKL, KnnEstimatorId.HVIC, KnnEstimatorId.HN})
BITS = frozenset({KnnEstimatorId.HVIC, KnnEstimatorId.HN})

CITATIONS = {
    KnnEstimatorId.HKL: "Kozachenko and Leonenko (1987)",
    KnnEstimatorId.HVIC: "Victor (2002), bits",
    KnnEstimatorId.HS: "Singh, Misra, Hnizdo, Fedorowicz and Demchuk (2003)",
    KnnEstimatorId.HN: "Nilsson and Kleijn (2004), bits",
    KnnEstimatorId.HK: "Kraskov, Stoegbauer and Grassberger (2004)",
    KnnEstimatorId.HL: "Leonenko, Pronzato and Savani (2008); Goria et al. (2005)",
}


@dataclass(frozen=True)
class NeighborResult:
    index: int
    distance: float


def _validate_k(k, n):
    if isinstance(k, bool) or int(k) != k or k < 1:
        raise KTooLarge(f"k must be a positive integer, got {k!r}")
    if k > n - 1:
        raise KTooLarge(f"k={k} needs at least {k + 1} points, got {n}")
    return int(k)


def nearest_neighbor(cloud, i, k):
    """The k-th nearest neighbour of observation ``i`` among the others.

    Observations are numbered 1..n in row order, for ``i`` and for the
    returned index alike.
    """
    cloud = as_cloud(cloud)
    k = _validate_k(k, cloud.n)
    if isinstance(i, bool) or int(i) != i or not 1 <= i <= cloud.n:
        raise IndexError(f"observation index {i!r} outside [1, {cloud.n}]")
    row = int(i) - 1
    dist, idx = knn(cloud.points, k)
    if dist[row, k - 1] == 0:
        raise DuplicatePoint(f"observation {i} has a duplicate among its {k} nearest neighbours")
    return NeighborResult(int(idx[row, k - 1]) + 1, float(dist[row, k - 1]))


def knn_distance(cloud, i, k):
    """Euclidean distance from observation ``i`` (1-based) to its k-th nearest neighbour."""
    return nearest_neighbor(cloud, i, k).distance


def kth_distances(cloud, k):
    """k-th neighbour distance of every point; raises on zero distances."""
    cloud = as_cloud(cloud)
    k = _validate_k(k, cloud.n)
    dist = knn(cloud.points, k)[0][:, k - 1]
    if np.any(dist == 0):
        raise DuplicatePoint("duplicate points give a zero neighbour distance")
    return dist


def estimate_knn(estimator, cloud, k=1, *, paper_literal=False):
    """Estimate entropy with a kNN estimator.

    Parameters
    ----------
    estimator : KnnEstimatorId or str
    cloud : PointCloud or array_like
        ``n x d`` data, or a 1-D array for d = 1.
    k : int
        Neighbour order. Ignored (forced to 1) for HKL, HVIC and HN.
    paper_literal : bool
        For HKL, use the neighbour distance unpowered in the density
        ``1 / ((n - 1) c_d dist)`` instead of ``dist ** d``. The two agree
        at d = 1.

    Returns
    -------
    float
        Nats, except bits for HVIC and HN.
    """
    estimator = KnnEstimatorId(estimator)
    cloud = as_cloud(cloud)
    n, d = cloud.n, cloud.d
    if estimator in FIXED_K:
        k = 1
    k = _validate_k(k, n)
    mean_log = float(np.mean(np.log(kth_distances(cloud, k))))
    log_cd = math.log(unit_ball_volume(d))

    if estimator is KnnEstimatorId.HKL:
        power = 1 if paper_literal else d
        return power * mean_log + math.log(n - 1) + log_cd + EULER_GAMMA
    if estimator is KnnEstimatorId.HVIC:
        log_v = math.log(d) + 0.5 * d * math.log(math.pi) - log_gamma(0.5 * d + 1)
        return (d * mean_log + log_v + math.log(n - 1)) / LN2 + EULER_GAMMA / LN2
    if estimator is KnnEstimatorId.HS:
        return d * mean_log + math.log(n) + log_cd + EULER_GAMMA - harmonic(k - 1)
    if estimator is KnnEstimatorId.HN:
        return (d * mean_log + math.log(n)) / LN2 + EULER_GAMMA / LN2 + 0.5 * math.log2(2 * math.e)
    if estimator is KnnEstimatorId.HK:
        log_v = d * LN2 + log_cd
        return -digamma(k) + digamma(n) + log_v + d * (mean_log + LN2)
    # HL
    return -digamma(k) + math.log(n - 1) + log_cd + d * mean_log


def to_nats(estimator, value):
    """Convert an :func:`estimate_knn` result to nats."""
    return value * LN2 if KnnEstimatorId(estimator) in BITS else value
