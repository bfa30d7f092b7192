"""One lookup table over the three estimator families.

Maps every estimator id to its family, its tuning parameter and a uniform
call signature returning nats, so the benchmark engine and the command
line never need to know which module implements an id.
"""

import math
from dataclasses import dataclass

from . import kde, knn, spacing
from .errors import ConfigError
from .samples import OrderedSample, as_cloud

SPACING = "spacing"
KDE = "kde"
KNN = "knn"


@dataclass(frozen=True)
class EstimatorInfo:
    id: str
    family: str
    param: str  # "m", "k" or "" when the estimator has no window/order
    citation: str
    multivariate: bool
    units: str = "nats"


def _build():
    table = {}
    for e in spacing.SpacingEstimatorId:
        table[e.value] = EstimatorInfo(e.value, SPACING, "m", spacing.citation(e), False)
    for e in kde.KdeEstimatorId:
        param = "m" if e in kde.NEEDS_WINDOW else ""
        table[e.value] = EstimatorInfo(
            e.value, KDE, param, kde.CITATIONS[e], e is kde.KdeEstimatorId.HAL
        )
    for e in knn.KnnEstimatorId:
        param = "" if e in knn.FIXED_K else "k"
        units = "bits" if e in knn.BITS else "nats"
        table[e.value] = EstimatorInfo(e.value, KNN, param, knn.CITATIONS[e], True, units)
    return table


ESTIMATORS = _build()


def info(estimator):
    """Registry entry for an id; raises :class:`ConfigError` if unknown."""
    key = getattr(estimator, "value", estimator)
    try:
        return ESTIMATORS[str(key).upper()]
    except KeyError:
        raise ConfigError(f"unknown estimator {estimator!r}") from None


def default_param(estimator, n):
    """Window m* for windowed estimators, k = 1 for kNN, else None."""
    p = info(estimator).param
    if p == "m":
        return spacing.optimal_window(n)
    if p == "k":
        return 1
    return None


def validate(estimator, n, d, param=None, *, epsilon=0.05):
    """Reject (estimator, n, d, parameter) combinations that can never run.

    Estimator-specific structural failures (HM at m = 2, HB at m = 1,
    HE2 with overlapping boundary branches) are left to run time, where
    they are counted as failures rather than rejected.
    """
    e = info(estimator)
    if d < 1:
        raise ConfigError(f"{e.id}: dimension must be >= 1, got {d}")
    if d > 1 and not e.multivariate:
        raise ConfigError(f"{e.id}: univariate estimator cannot take d={d}")
    if e.family in (SPACING, KDE) and e.id != "HAL" and n < 3:
        raise ConfigError(f"{e.id}: needs n >= 3, got n={n}")
    if n < 2:
        raise ConfigError(f"{e.id}: needs n >= 2, got n={n}")
    if e.param == "m":
        if param is None or int(param) != param or not 1 <= param <= n // 2:
            raise ConfigError(f"{e.id}: window m={param} outside [1, {n // 2}] for n={n}")
    elif e.param == "k":
        if param is None or int(param) != param or not 1 <= param <= n - 1:
            raise ConfigError(f"{e.id}: k={param} outside [1, {n - 1}] for n={n}")
    if e.id in ("HB_EPS", "HBE") and not 0 < epsilon < 0.5:
        raise ConfigError(f"{e.id}: epsilon={epsilon} outside (0, 1/2)")
    return e


def evaluate(estimator, data, param=None, *, paper_literal=False, epsilon=0.05, w=3,
             panels=512, bounds=spacing.AUTO):
    """Evaluate any registered estimator on ``data`` and return nats.

    ``data`` is an :class:`OrderedSample`, :class:`PointCloud` or array.
    ``param`` is the window m or neighbour order k; ``None`` picks the
    default for the sample size.
    """
    e = info(estimator)
    n = len(data) if isinstance(data, OrderedSample) else as_cloud(data).n
    if param is None:
        param = default_param(e.id, n)
    if e.family == SPACING:
        p = spacing.SpacingParams(m=param, w=w, bounds=bounds, paper_literal=paper_literal)
        return spacing.estimate_spacing(e.id, data, p)
    if e.family == KDE:
        p = kde.KdeParams(m=param, epsilon=epsilon, quadrature_panels=panels,
                          paper_literal=paper_literal)
        return kde.estimate_kde(e.id, data, p)
    value = knn.estimate_knn(e.id, data, 1 if param is None else param,
                             paper_literal=paper_literal)
    return knn.to_nats(e.id, value)


def to_bits(nats):
    return nats / math.log(2.0)
