"""Gaussian kernel density machinery and KDE-based entropy estimators.

Univariate bandwidths follow the normal reference rule
h = 1.06 * s * n^(-1/5); multivariate ones scale the sample covariance,
H = (4 / (n (d + 2)))^(2 / (d + 4)) * S. Standard deviations and covariances
use the n - 1 denominator. Results are in nats.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DataError,
    DegenerateSample,
    DimensionUnsupported,
    InvalidWindow,
    MissingParam,
    NonpositiveDensityDifference,
    NonpositiveQuantileDensity,
)
from .samples import OrderedSample, PointCloud, check_window

_LOG_SQRT_2PI = 0.5 * math.log(2 * math.pi)
_INV_SQRT_2PI = 1.0 / math.sqrt(2 * math.pi)


class KdeEstimatorId(str, enum.Enum):
    HAL = "HAL"
    HAN = "HAN"
    HZA1 = "HZA1"
    HZA2 = "HZA2"
    HAN2 = "HAN2"
    HB_EPS = "HB_EPS"
    HBE = "HBE"


NEEDS_WINDOW = frozenset(
    {KdeEstimatorId.HAN, KdeEstimatorId.HZA1, KdeEstimatorId.HZA2, KdeEstimatorId.HAN2}
)
NEEDS_EPSILON = frozenset({KdeEstimatorId.HB_EPS, KdeEstimatorId.HBE})

CITATIONS = {
    KdeEstimatorId.HAL: "Ahmad and Lin (1976)",
    KdeEstimatorId.HAN: "Alizadeh Noughabi (2010)",
    KdeEstimatorId.HZA1: "Zamanzade and Arghami (2012), first estimator",
    KdeEstimatorId.HZA2: "Zamanzade and Arghami (2012), weighted estimator",
    KdeEstimatorId.HAN2: "Alizadeh Noughabi and Alizadeh Noughabi (2013)",
    KdeEstimatorId.HB_EPS: "Bouzebda, Elhattab, Keziou and Lounis (2013)",
    KdeEstimatorId.HBE: "Bouzebda and Elhattab (2014)",
}


@dataclass(frozen=True)
class KdeParams:
    """Parameters for :func:`estimate_kde`.

    ``m`` is the window for HAN, HZA1, HZA2 and HAN2. ``epsilon`` in
    (0, 1/2) trims the quantile range of HB_EPS and HBE; HB_EPS integrates
    with ``quadrature_panels`` trapezoid panels. ``bandwidth`` overrides the
    automatic rule (a scalar h for d = 1).
    """

    m: int = None
    epsilon: float = 0.05
    quadrature_panels: int = 512
    bandwidth: object = None
    paper_literal: bool = False


def gaussian_kernel(t):
    t = np.asarray(t, dtype=float)
    return _INV_SQRT_2PI * np.exp(-0.5 * t * t)


def bandwidth_1d(n, sigma_hat):
    """Normal reference bandwidth 1.06 * sigma_hat * n^(-1/5)."""
    if n < 2:
        raise DegenerateSample(f"bandwidth needs n >= 2, got {n}")
    if not sigma_hat > 0:
        raise DegenerateSample("zero sample standard deviation (constant sample)")
    return 1.06 * sigma_hat * n ** (-0.2)


def bandwidth_matrix(n, cov_hat):
    """Normal scale bandwidth matrix (4 / (n (d + 2)))^(2 / (d + 4)) * cov_hat."""
    cov = np.atleast_2d(np.asarray(cov_hat, dtype=float))
    d = cov.shape[0]
    if cov.shape != (d, d):
        raise DataError(f"covariance must be square, got shape {cov.shape}")
    if n < d + 1:
        raise DegenerateSample(f"need n >= d + 1 = {d + 1} points, got {n}")
    if not np.allclose(cov, cov.T):
        raise DegenerateSample("covariance matrix is not symmetric")
    try:
        np.linalg.cholesky(cov)
    except np.linalg.LinAlgError:
        raise DegenerateSample("covariance matrix is singular or not positive definite") from None
    return (4.0 / (n * (d + 2))) ** (2.0 / (d + 4)) * cov


def auto_bandwidth(points):
    """Default bandwidth for an ``n x d`` (or 1-D) sample: scalar h at d = 1, else H."""
    points = np.asarray(points, dtype=float)
    if points.ndim == 1:
        points = points[:, None]
    n, d = points.shape
    if d == 1:
        sigma = float(np.std(points[:, 0], ddof=1)) if n > 1 else 0.0
        return bandwidth_1d(n, sigma)
    return bandwidth_matrix(n, np.cov(points, rowvar=False))


def _log_kde(x, data, bw):
    """log f_hat at the rows of ``x`` given ``data`` (both 2-D)."""
    n, d = data.shape
    if np.ndim(bw) == 0:
        h = float(bw)
        if not h > 0:
            raise DegenerateSample(f"bandwidth must be positive, got {h}")
        if d != 1:
            raise DataError("scalar bandwidth given for multivariate data")
        z = (x[:, 0][:, None] - data[:, 0][None, :]) / h
        log_norm = -_LOG_SQRT_2PI - math.log(h)
        sq = z * z
    else:
        H = np.asarray(bw, dtype=float)
        try:
            L = np.linalg.cholesky(H)
        except np.linalg.LinAlgError:
            raise DegenerateSample("bandwidth matrix is not positive definite") from None
        diff = x[:, None, :] - data[None, :, :]
        z = np.linalg.solve(L, diff.reshape(-1, d).T).T.reshape(x.shape[0], n, d)
        sq = np.sum(z * z, axis=-1)
        log_norm = -d * _LOG_SQRT_2PI - float(np.sum(np.log(np.diag(L))))
    # log-sum-exp over the sample for each evaluation point
    top = np.min(sq, axis=1, keepdims=True)
    s = np.sum(np.exp(-0.5 * (sq - top)), axis=1)
    return log_norm - math.log(n) - 0.5 * top[:, 0] + np.log(s)


def kde_pdf(x, sample, bw=None):
    """Gaussian kernel density estimate at ``x``.

    ``x`` is a scalar or a d-vector (or an array of such points). ``bw`` is
    a scalar bandwidth h (d = 1) or a d x d bandwidth matrix; by default the
    normal reference rule for the sample is used.
    """
    data = _points(sample)
    n, d = data.shape
    bw = auto_bandwidth(data) if bw is None else bw
    xa = np.asarray(x, dtype=float)
    if d > 1 and (xa.ndim == 0 or xa.shape[-1] != d):
        raise DataError(f"evaluation points must have {d} coordinates, got shape {xa.shape}")
    scalar = xa.ndim == 0 or (xa.ndim == 1 and d > 1)
    pts = xa.reshape(-1, d) if d > 1 else xa.reshape(-1, 1)
    out = np.exp(_log_kde(pts, data, bw))
    return float(out[0]) if scalar else out.reshape(xa.shape[:-1] if d > 1 else xa.shape)


def _points(sample):
    if isinstance(sample, OrderedSample):
        return sample.values[:, None]
    if isinstance(sample, PointCloud):
        return sample.points
    return PointCloud(sample).points


def _univariate(sample, estimator):
    data = _points(sample)
    if data.shape[1] != 1:
        raise DimensionUnsupported(f"{estimator.value} is only defined for d = 1")
    return np.sort(data[:, 0])


def _bandwidth_for(x, params):
    if params.bandwidth is not None:
        return float(params.bandwidth)
    sigma = float(np.std(x, ddof=1))
    return bandwidth_1d(x.size, sigma)


def _window(params, n, estimator):
    if params.m is None:
        raise MissingParam(f"{estimator.value} requires a window size m")
    return check_window(params.m, n)


def _order(x, idx):
    return x[np.clip(idx, 1, x.size) - 1]


def _safe_log(v, what):
    v = np.asarray(v, dtype=float)
    if np.any(v <= 0):
        raise DegenerateSample(f"non-positive {what}")
    return np.log(v)


def _hal(sample, params):
    data = _points(sample)
    bw = params.bandwidth if params.bandwidth is not None else auto_bandwidth(data)
    return float(-np.mean(_log_kde(data, data, bw)))


def _han(x, params):
    n = x.size
    m = _window(params, n, KdeEstimatorId.HAN)
    f = np.exp(_log_kde(x[:, None], x[:, None], _bandwidth_for(x, params)))
    i = np.arange(1, n + 1)
    diff = (_order(f, i + m) - _order(f, i - m)) / 2
    bad = np.flatnonzero(diff <= 0)
    if bad.size:
        raise NonpositiveDensityDifference(
            f"f(X_(i+m)) - f(X_(i-m)) <= 0 at {bad.size} of {n} indices (first i={bad[0] + 1})"
        )
    return float(-np.mean(np.log(diff)))


def _zamanzade_b(x, params, estimator):
    n = x.size
    m = _window(params, n, estimator)
    f = np.exp(_log_kde(x[:, None], x[:, None], _bandwidth_for(x, params)))
    # trapezoid masses of the consecutive intervals (X_(j), X_(j+1)), j = 1..n-1
    cells = np.concatenate(([0.0], np.cumsum((f[1:] + f[:-1]) / 2 * np.diff(x))))
    i = np.arange(1, n + 1)
    k1 = np.where(i <= m, 1, i - m)
    if params.paper_literal:
        k2 = np.where(i <= n - m, i + m, i - m)
    else:
        k2 = np.where(i <= n - m, i + m, n)
    mass = cells[k2 - 1] - cells[k1 - 1]
    gap = _order(x, i + m) - _order(x, i - m)
    if np.any(gap <= 0):
        raise DegenerateSample("zero spacing (tied observations)")
    if np.any(mass <= 0):
        raise DegenerateSample("empty probability mass between window ends")
    return np.log(gap / mass), m


def zamanzade_weights(n, m):
    """Normalised weights of HZA2 for i = 1..n."""
    i = np.arange(1, n + 1, dtype=float)
    w = np.full(n, 2.0 * m)
    w[i <= m] = m + i[i <= m] - 1
    w[i >= n - m + 1] = n - i[i >= n - m + 1] + m
    return w / w.sum()


def _hza1(x, params):
    logb, _ = _zamanzade_b(x, params, KdeEstimatorId.HZA1)
    return float(np.mean(logb))


def _hza2(x, params):
    logb, m = _zamanzade_b(x, params, KdeEstimatorId.HZA2)
    return float(np.sum(zamanzade_weights(x.size, m) * logb))


def _han2(x, params):
    n = x.size
    m = _window(params, n, KdeEstimatorId.HAN2)
    i = np.arange(1, n + 1)
    edge = (i <= m) | (i >= n - m + 1)
    s = np.empty(n)
    if np.any(edge):
        s[edge] = np.exp(_log_kde(x[edge][:, None], x[:, None], _bandwidth_for(x, params)))
    mid = ~edge
    gap = _order(x, i[mid] + m) - _order(x, i[mid] - m)
    if np.any(gap <= 0):
        raise DegenerateSample("zero spacing (tied observations)")
    s[mid] = (2 * m / n) / gap
    return float(-np.mean(np.log(s)))


def quantile_bandwidth(n):
    """Bandwidth on the probability scale for the kernel quantile density:
    the normal reference rule applied to a Uniform(0, 1) spread."""
    return 1.06 * n ** (-0.2) / math.sqrt(12.0)


def quantile_density(t, x, h, *, paper_literal=False):
    """Boundary-corrected kernel quantile density estimate q_hat(t).

    With q_bar(t) = (1/h) sum_{i=1}^{n-1} K((t - i/n)/h) (X_(i+1) - X_(i)),
    the default divides q_bar by the kernel mass (1/(n h)) sum K((t - i/n)/h)
    that falls on the nodes, undoing the loss of mass near 0 and 1. This is
    positive, location invariant and exactly flat for evenly spaced data.
    ``paper_literal`` adds the printed boundary term
    (1/h)[K((t - 1)/h) X_(n) - K(t/h) X_(1)] instead, which depends on the
    data's location and can turn negative.
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    n = x.size
    nodes = np.arange(1, n) / n
    kern = gaussian_kernel((t[:, None] - nodes[None, :]) / h)
    qbar = kern @ np.diff(x) / h
    if paper_literal:
        return qbar + (gaussian_kernel((t - 1) / h) * x[-1] - gaussian_kernel(t / h) * x[0]) / h
    return qbar / (kern.sum(axis=1) / (n * h))


def _epsilon(params):
    eps = params.epsilon
    if eps is None or not 0 < eps < 0.5:
        raise MissingParam(f"epsilon must lie in (0, 1/2), got {eps!r}")
    return float(eps)


def _quantile_logs(t, x, h, params):
    q = quantile_density(t, x, h, paper_literal=params.paper_literal)
    if np.any(q <= 0):
        raise NonpositiveQuantileDensity("kernel quantile density is not positive")
    return np.log(q)


def _quantile_h(x, params):
    return float(params.bandwidth) if params.bandwidth is not None else quantile_bandwidth(x.size)


def _hb_eps(x, params):
    eps = _epsilon(params)
    panels = int(params.quadrature_panels)
    if panels < 1:
        raise MissingParam(f"quadrature_panels must be positive, got {panels}")
    h = _quantile_h(x, params)
    ends = _quantile_logs([eps, 1 - eps], x, h, params)
    grid = np.linspace(eps, 1 - eps, panels + 1)
    lq = _quantile_logs(grid, x, h, params)
    step = (1 - 2 * eps) / panels
    integral = step * (np.sum(lq) - 0.5 * (lq[0] + lq[-1]))
    return float(eps * (ends[0] + ends[1]) + integral)


def _hbe(x, params):
    eps = _epsilon(params)
    n = x.size
    h = _quantile_h(x, params)
    ends = _quantile_logs([eps, 1 - eps], x, h, params)
    first = max(int(math.floor(eps * n)), 1)
    last = int(math.floor((1 - eps) * n))
    if last < first:
        raise InvalidWindow(f"no order statistics between [eps n]={first} and [(1-eps) n]={last}")
    lq = _quantile_logs(np.arange(first, last + 1) / n, x, h, params)
    weight = 1.0 / n if params.paper_literal else (1 - 2 * eps) / lq.size
    return float(eps * (ends[0] + ends[1]) + weight * np.sum(lq))


_UNIVARIATE = {
    KdeEstimatorId.HAN: _han,
    KdeEstimatorId.HZA1: _hza1,
    KdeEstimatorId.HZA2: _hza2,
    KdeEstimatorId.HAN2: _han2,
    KdeEstimatorId.HB_EPS: _hb_eps,
    KdeEstimatorId.HBE: _hbe,
}


def estimate_kde(estimator, sample, params=None):
    """Estimate entropy (nats) with a KDE-based estimator.

    Parameters
    ----------
    estimator : KdeEstimatorId or str
    sample : OrderedSample, PointCloud or array_like
        Only HAL accepts d > 1.
    params : KdeParams, int or None
        A bare integer is taken as the window size ``m``.
    """
    estimator = KdeEstimatorId(estimator)
    if params is None:
        params = KdeParams()
    elif not isinstance(params, KdeParams):
        params = KdeParams(m=params)
    if estimator is KdeEstimatorId.HAL:
        if _points(sample).shape[0] < 2:
            raise DegenerateSample("HAL needs at least 2 points")
        return _hal(sample, params)
    x = _univariate(sample, estimator)
    if x.size < 3:
        raise InvalidWindow(f"{estimator.value} needs n >= 3, got {x.size}")
    return _UNIVARIATE[estimator](x, params)
