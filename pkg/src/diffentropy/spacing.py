"""Window-size spacing estimators of univariate differential entropy.

Every estimator works on the order statistics of the sample and a window
half-width ``m``. Indices below are 1-based to match the usual order
statistic notation; out-of-range order statistics clamp to the sample
extremes unless an estimator says otherwise. All results are in nats.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateSpacing,
    InvalidWindow,
    MissingParam,
    SingularSlope,
)
from .samples import as_ordered, check_window
from .specfn import digamma

AUTO = "auto"


class SpacingEstimatorId(str, enum.Enum):
    HV = "HV"
    HD = "HD"
    HE_VANES = "HE_VANES"
    HE1 = "HE1"
    HE2 = "HE2"
    HC = "HC"
    HW1 = "HW1"
    HW2 = "HW2"
    HP_PASHA = "HP_PASHA"
    HA = "HA"
    HZ = "HZ"
    HPS_PARK = "HPS_PARK"
    HA1 = "HA1"
    HA2 = "HA2"
    HA3 = "HA3"
    HK1 = "HK1"
    HK2 = "HK2"
    HB1 = "HB1"
    HB2 = "HB2"
    HJ = "HJ"
    HM = "HM"


@dataclass(frozen=True)
class SpacingParams:
    """Parameters for :func:`estimate_spacing`.

    ``w`` is the moving-average window of HK1/HK2 (odd). ``bounds`` is the
    support ``(a, b)`` used by HE2, or ``AUTO`` for the data-driven bounds.
    ``paper_literal`` switches to the formulas exactly as printed in the
    source literature where this package corrects an apparent typo.
    """

    m: int
    w: int = 3
    bounds: object = AUTO
    paper_literal: bool = False


def optimal_window(n):
    """m* = floor(sqrt(n) + 0.5), clamped into ``[1, n // 2]``."""
    n = int(n)
    if n < 2:
        raise InvalidWindow(f"need n >= 2 for a window, got {n}")
    m = int(math.floor(math.sqrt(n) + 0.5))
    return min(max(m, 1), n // 2)


def window_set(n):
    """Candidate windows m* - 2, ..., m* + 2 restricted to ``[1, n // 2]``."""
    m = optimal_window(n)
    return [w for w in range(m - 2, m + 3) if 1 <= w <= n // 2]


def vasicek_bias_term(m, n):
    """Limit of HV - H as n, m grow with m/n -> 0.

    E = log n - log 2m + (1 - 2m/n) psi(2m) - psi(n + 1)
        + (2/n) sum_{i=1}^{m} psi(i + m - 1)
    """
    n = int(n)
    m = check_window(m, n)
    tail = math.fsum(digamma(i + m - 1) for i in range(1, m + 1))
    return (
        math.log(n)
        - math.log(2 * m)
        + (1 - 2 * m / n) * digamma(2 * m)
        - digamma(n + 1)
        + 2.0 / n * tail
    )


# -- helpers ---------------------------------------------------------------


def _logs(gaps, what="spacing"):
    gaps = np.asarray(gaps, dtype=float)
    if np.any(gaps <= 0):
        raise DegenerateSpacing(f"non-positive {what} (tied observations or bounds inside the data)")
    return np.log(gaps)


def _order(x, idx):
    n = x.shape[-1]
    return x[..., np.clip(idx, 1, n) - 1]


def _gaps(x, m):
    """Clamped spacings X_(i+m) - X_(i-m) for i = 1..n."""
    i = np.arange(1, x.size + 1)
    return _order(x, i + m) - _order(x, i - m)


def _boundary_coeffs(n, m, left, middle, right):
    """Piecewise coefficient over i = 1..n: left(i) for i <= m, middle, right(i)
    for i >= n - m + 1."""
    i = np.arange(1, n + 1, dtype=float)
    c = np.full(n, float(middle))
    lo = i <= m
    hi = i >= n - m + 1
    c[lo] = left(i[lo])
    c[hi] = right(i[hi])
    return c


def _coeff_form(x, m, c):
    """(1/n) sum log{ n / (c_i m) * (X_(i+m) - X_(i-m)) }."""
    n = x.size
    return float(np.mean(_logs(_gaps(x, m)) + np.log(n / (c * m))))


def support_bounds(sample, paper_literal=False):
    """Data-driven support ``(a, b)``: the extremes pushed out by one mean gap."""
    return _auto_bounds(as_ordered(sample).values, paper_literal)


def _auto_bounds(x, paper_literal):
    n = x.size
    step = (x[-1] - x[0]) / (n - 1)
    a = x[0] - step
    b = x[-1] - step if paper_literal else x[-1] + step
    return a, b


def _extended_gaps(x, m, a, b):
    """Z_(i+m) - Z_(i-m) with linear extension of the order statistics to the
    support bounds ``a`` and ``b`` instead of clamping."""
    n = x.size
    i = np.arange(1, n + 1)
    lo = np.where(
        i - m >= 1,
        _order(x, i - m),
        a + (i - 1) / m * (x[0] - a),
    )
    hi = np.where(
        i + m <= n,
        _order(x, i + m),
        b - (n - i) / m * (b - x[-1]),
    )
    return hi - lo


def _local_slopes(x, m):
    """Local least-squares slope of (j - i) on X_(j) over j = i-m..i+m.

    Works on a single sample (shape ``(n,)``) or a batch ``(B, n)``; returns
    sum (X_(j) - mean)(j - i) / sum (X_(j) - mean)^2 for every i.
    """
    n = x.shape[-1]
    i = np.arange(1, n + 1)[:, None]
    offs = np.arange(-m, m + 1)[None, :]
    win = _order(x, i + offs)  # (..., n, 2m+1)
    centred = win - win.mean(axis=-1, keepdims=True)
    den = np.sum(centred * centred, axis=-1)
    if np.any(den == 0):
        raise SingularSlope("constant regression window (tied observations)")
    num = np.sum(centred * offs, axis=-1)
    return num / den


def _correa(x, m):
    n = x.shape[-1]
    b = _local_slopes(x, m) / n
    return -np.mean(_logs(b, "local slope"), axis=-1)


def _moving_average(x, w):
    n = x.size
    half = (w - 1) // 2
    csum = np.concatenate(([0.0], np.cumsum(x)))
    y = np.empty(n)
    for i in range(1, n + 1):
        if i <= half:
            y[i - 1] = csum[i] / i
        elif i <= n - half:
            y[i - 1] = (csum[i + half] - csum[i - half - 1]) / w
        else:
            y[i - 1] = (csum[n] - csum[i - 1]) / (n - i + 1)
    return y


def _check_w(w, n):
    if w is None or isinstance(w, bool) or int(w) != w:
        raise MissingParam(f"moving-average window w must be an odd integer, got {w!r}")
    w = int(w)
    if w < 1 or w % 2 == 0 or w > n:
        raise MissingParam(f"moving-average window w={w} must be odd and in [1, {n}]")
    return w


def _bitaraf_t(x, m, j, boundary, scale):
    """T_ij = n (X_(i+m-j) - X_(i-m+j)) / (w_ij * scale) with w_ij = 2 in
    the interior band and ``boundary`` outside it."""
    n = x.size
    i = np.arange(1, n + 1)
    w = np.where((i >= m - j + 1) & (i <= n - m + j), 2.0, boundary)
    gap = _order(x, i + m - j) - _order(x, i - m + j)
    return n * gap / (w * scale)


# -- estimators --------------------------------------------------------------


def _hv(x, m, p):
    n = x.size
    return float(np.mean(_logs(_gaps(x, m)))) + math.log(n / (2 * m))


def _hd_literal(x, m):
    n = x.size
    inv = 1.0 / _gaps(x, m)  # inv[j-1] = 1 / D_j

    def s(lo, hi):
        return float(np.sum(inv[lo - 1:hi])) if hi >= lo else 0.0

    def X(k):
        return x[min(max(k, 1), n) - 1]

    total = 0.0
    for i in range(2 - m, 1):
        sj = s(1, i + m - 1)
        total += (X(i + m) - X(i + m - 1)) * sj * math.log(2.0 / n * sj)
    for i in range(1, n + 2 - m):
        sj = s(i, i + m - 1)
        lg = s(1, i + m - 1)
        total += (X(i) + X(i + m) - X(i - 1) - X(i + m - 1)) * sj * math.log(2.0 / n * lg)
    sj = s(1, n)
    for i in range(n + 2 - m, n + 1):
        total += (X(i) - X(i - 1)) * sj * math.log(2.0 / n * sj)
    return -total / n


def _hd(x, m, p):
    """Entropy of the piecewise-uniform mixture of the n window densities
    1{X_(j-m) <= t <= X_(j+m)} / (n D_j)."""
    if p.paper_literal:
        return _hd_literal(x, m)
    n = x.size
    gaps = _gaps(x, m)
    if np.any(gaps <= 0):
        raise DegenerateSpacing("zero window width (tied observations)")
    # Window j covers the elementary interval (X_(k-1), X_(k)) iff
    # max(j-m, 1) <= k-1 and k <= min(j+m, n).
    j = np.arange(1, n + 1)
    lo = np.maximum(j - m, 1)
    hi = np.minimum(j + m, n)
    dens = np.zeros(n + 2)
    np.add.at(dens, lo + 1, 1.0 / (n * gaps))
    np.add.at(dens, hi + 1, -1.0 / (n * gaps))
    dens = np.cumsum(dens)[2 : n + 1]  # density on interval k = 2..n
    length = np.diff(x)
    keep = length > 0
    f = dens[keep]
    return float(-np.sum(length[keep] * f * np.log(f)))


def _he_vanes(x, m, p):
    n = x.size
    diffs = x[m:] - x[: n - m]
    return (
        float(np.mean(_logs(diffs) + math.log((n + 1) / m)))
        + math.fsum(1.0 / k for k in range(m, n + 1))
        + math.log(m)
        - math.log(n + 1)
    )


def _he1(x, m, p):
    n = x.size
    c = _boundary_coeffs(n, m, lambda i: 1 + (i - 1) / m, 2.0, lambda i: 1 + (n - i) / m)
    return _coeff_form(x, m, c)


def _resolve_bounds(x, p):
    if isinstance(p.bounds, str) and p.bounds == AUTO:
        return _auto_bounds(x, p.paper_literal)
    if p.bounds is None:
        raise MissingParam("support bounds (a, b) or AUTO required")
    try:
        a, b = (float(v) for v in p.bounds)
    except (TypeError, ValueError):
        raise MissingParam(f"support bounds must be a pair (a, b), got {p.bounds!r}") from None
    if not a < b:
        raise MissingParam(f"support bounds need a < b, got ({a}, {b})")
    return a, b


def _he2(x, m, p):
    n = x.size
    if n - m <= m:
        raise InvalidWindow(f"HE2 coefficient branches overlap for m={m}, n={n}; need m < n/2")
    a, b = _resolve_bounds(x, p)
    i = np.arange(1, n + 1, dtype=float)
    d = np.full(n, 2.0)
    lo = i <= m
    hi = i >= n - m
    d[lo] = 1 + (i[lo] + 1) / m - i[lo] / m**2
    d[hi] = 1 + (n - i[hi]) / (m + 1)
    gaps = _extended_gaps(x, m, a, b)
    return float(np.mean(_logs(gaps) + np.log(n / (d * m))))


def _hc(x, m, p):
    return float(_correa(x, m))


def _hw1(x, m, p):
    return _hv(x, m, p) - vasicek_bias_term(m, x.size)


def _hw2(x, m, p):
    n = x.size
    hc = _correa(x, m)
    # leave-one-out samples, one per row
    keep = ~np.eye(n, dtype=bool)
    loo = np.broadcast_to(x, (n, n))[keep].reshape(n, n - 1)
    hc_star = float(np.mean(_correa(loo, m)))
    return float(hc - (n - 1) * (hc_star - hc))


def _hp_pasha(x, m, p):
    n = x.size
    a, b = _auto_bounds(x, p.paper_literal)
    c = _boundary_coeffs(
        n, m, lambda i: 1 + i / (i - 1 + m), 2.0, lambda i: 1 + (n - i + 1) / (n - i + m)
    )
    gaps = _extended_gaps(x, m, a, b)
    return float(np.mean(_logs(gaps) + np.log(n / (c * m))))


def _ha(x, m, p):
    n = x.size
    c = _boundary_coeffs(n, m, lambda i: np.ones_like(i), 2.0, lambda i: np.ones_like(i))
    return _coeff_form(x, m, c)


def _hz(x, m, p):
    n = x.size
    c = _boundary_coeffs(n, m, lambda i: i / m, 2.0, lambda i: (n - i + 1) / m)
    return _coeff_form(x, m, c)


def _hps_park(x, m, p):
    n = x.size
    i = np.arange(1, n + 2)[:, None]
    offs = np.arange(-m, m)[None, :]
    xi = _order(x, i + offs).mean(axis=1)  # xi'_i for i = 1..n+1
    return float(np.mean(_logs(n * np.diff(xi))))


def _ha1(x, m, p):
    n = x.size
    c = _boundary_coeffs(n, m, lambda i: np.full_like(i, 1.5), 2.0, lambda i: np.full_like(i, 1.5))
    return _coeff_form(x, m, c)


def _ha2(x, m, p):
    n = x.size
    c = _boundary_coeffs(n, m, lambda i: np.full_like(i, 1.25), 2.0, lambda i: np.full_like(i, 1.25))
    return _coeff_form(x, m, c)


def ha3_coefficients(n, m):
    """The nu_i coefficients of HA3 for i = 1..n."""
    return _boundary_coeffs(n, m, lambda i: 1 + (i - 1) / m, 2.0, lambda i: 1 + (n - i) / (2 * m))


def _ha3(x, m, p):
    return _coeff_form(x, m, ha3_coefficients(x.size, m))


def _kohansal_constant(m, n):
    tail = math.fsum(digamma(i + m - 1) for i in range(1, m + 1))
    return -(1 - 2 * m / n) * digamma(2 * m) + digamma(n + 1) - 2.0 / n * tail


def _hk1(x, m, p):
    n = x.size
    y = _moving_average(x, _check_w(p.w, n))
    i = np.arange(1, n + 1)
    gaps = _order(y, i + m - 1) - _order(y, i - m - 1)
    return float(np.mean(_logs(gaps, "smoothed spacing"))) + _kohansal_constant(m, n)


def _hk2(x, m, p):
    n = x.size
    y = _moving_average(x, _check_w(p.w, n))
    last = n - m if p.paper_literal else n - m + 1
    i = np.arange(2, last + 1)
    gaps = _order(y, i + m - 1) - _order(y, i - 1)
    return float(np.sum(_logs(gaps, "smoothed spacing")) / (n - m)) + math.fsum(
        1.0 / k for k in range(m, n + 1)
    )


def _bitaraf_terms(x, m):
    if m < 2:
        raise InvalidWindow("HB1/HB2 need m >= 2 (the j = 1 term divides by m - 1)")
    t0 = _bitaraf_t(x, m, 0, 1.0, m)
    t1 = _bitaraf_t(x, m, 1, 1.0, m - 1)
    return _logs((t0 + t1) / 2)


def _hb1(x, m, p):
    return float(np.mean(_bitaraf_terms(x, m)))


def _hb2(x, m, p):
    lt = _bitaraf_terms(x, m)
    n = x.size
    # trapezoid weights over n nodes total 1 only with the 2(n - 1) divisor
    norm = 2 * n if p.paper_literal else 2 * (n - 1)
    return float((lt[0] + lt[-1] + 2 * np.sum(lt[1:-1])) / norm)


def _hj(x, m, p):
    n = x.size
    i = np.arange(1, n + 1)
    s = np.empty(n)
    lo = i <= m
    hi = i >= n - m + 1
    mid = ~(lo | hi)
    s[lo] = (m / n) / (_order(x, i[lo] + m) - x[0])
    s[hi] = (m / n) / (x[-1] - _order(x, i[hi] - m))
    if np.any(mid):
        s[mid] = _local_slopes(x, m)[mid] / n
    if not np.all(np.isfinite(s)):
        raise DegenerateSpacing("zero boundary spacing (tied observations)")
    return float(-np.mean(_logs(s, "slope")))


def _hm(x, m, p):
    if m == 2:
        raise InvalidWindow("HM is undefined for m = 2 (the j = 1 term divides by m - 2)")
    t0 = _bitaraf_t(x, m, 0, 4.0 / 3.0, m)
    t1 = _bitaraf_t(x, m, 1, 4.0 / 3.0, m - 2)
    return float(np.mean(_logs((t0 + t1) / 2)))


_REGISTRY = {
    SpacingEstimatorId.HV: (_hv, "Vasicek (1976)"),
    SpacingEstimatorId.HD: (_hd, "Dudewicz and van der Meulen (1987)"),
    SpacingEstimatorId.HE_VANES: (_he_vanes, "van Es (1992)"),
    SpacingEstimatorId.HE1: (_he1, "Ebrahimi, Pflughoeft and Soofi (1994), first estimator"),
    SpacingEstimatorId.HE2: (_he2, "Ebrahimi, Pflughoeft and Soofi (1994), second estimator"),
    SpacingEstimatorId.HC: (_hc, "Correa (1995)"),
    SpacingEstimatorId.HW1: (_hw1, "Wieczorkowski and Grzegorzewski (1999), bias corrected"),
    SpacingEstimatorId.HW2: (_hw2, "Wieczorkowski and Grzegorzewski (1999), jackknifed Correa"),
    SpacingEstimatorId.HP_PASHA: (_hp_pasha, "Pasha, Khodabin and Mohtashami Borzadaran (2005)"),
    SpacingEstimatorId.HA: (_ha, "Alizadeh Noughabi and Arghami (2010)"),
    SpacingEstimatorId.HZ: (_hz, "Zamanzade and Arghami (2011)"),
    SpacingEstimatorId.HPS_PARK: (_hps_park, "Park and Shin (2012)"),
    SpacingEstimatorId.HA1: (_ha1, "Al-Omari (2014)"),
    SpacingEstimatorId.HA2: (_ha2, "Al-Omari (2015)"),
    SpacingEstimatorId.HA3: (_ha3, "Al-Omari (2016)"),
    SpacingEstimatorId.HK1: (_hk1, "Kohansal and Rezakhah (2016), smoothed Vasicek-type"),
    SpacingEstimatorId.HK2: (_hk2, "Kohansal and Rezakhah (2016), smoothed van Es-type"),
    SpacingEstimatorId.HB1: (_hb1, "Bitaraf, Rezaei and Yousefzadeh (2017), first estimator"),
    SpacingEstimatorId.HB2: (_hb2, "Bitaraf, Rezaei and Yousefzadeh (2017), second estimator"),
    SpacingEstimatorId.HJ: (_hj, "Alizadeh Noughabi and Jarrahiferiz (2019)"),
    SpacingEstimatorId.HM: (_hm, "Madukaife (2023)"),
}


def citation(estimator):
    return _REGISTRY[SpacingEstimatorId(estimator)][1]


def estimate_spacing(estimator, sample, params):
    """Estimate entropy (nats) with a spacing estimator.

    Parameters
    ----------
    estimator : SpacingEstimatorId or str
        Which formula to evaluate.
    sample : OrderedSample or array_like
        Univariate data; raw arrays are sorted.
    params : SpacingParams or int
        Window size and estimator-specific extras. A bare integer is taken
        as the window size with default extras.
    """
    estimator = SpacingEstimatorId(estimator)
    sample = as_ordered(sample)
    if not isinstance(params, SpacingParams):
        params = SpacingParams(m=params)
    n = sample.n
    if n < 3:
        raise InvalidWindow(f"spacing estimators need n >= 3, got {n}")
    m = check_window(params.m, n)
    func = _REGISTRY[estimator][0]
    return func(sample.values, m, params)
