"""Scalar reference implementations used as test oracles.

Each function is a direct loop over the printed formula with 1-based
order statistics, written independently of the vectorised package code.
"""

import math

import mpmath


def X(x, k):
    """Clamped 1-based order statistic of a sorted list."""
    n = len(x)
    return x[min(max(k, 1), n) - 1]


def coeff_form(x, m, coeff):
    n = len(x)
    return sum(math.log(n / (coeff(i) * m) * (X(x, i + m) - X(x, i - m))) for i in range(1, n + 1)) / n


def piecewise(n, m, left, mid, right):
    def c(i):
        if i <= m:
            return left(i)
        if i >= n - m + 1:
            return right(i)
        return mid
    return c


def hv(x, m):
    return coeff_form(x, m, lambda i: 2.0)


def he1(x, m):
    n = len(x)
    return coeff_form(x, m, piecewise(n, m, lambda i: 1 + (i - 1) / m, 2.0, lambda i: 1 + (n - i) / m))


def ha(x, m):
    n = len(x)
    return coeff_form(x, m, piecewise(n, m, lambda i: 1.0, 2.0, lambda i: 1.0))


def hz(x, m):
    n = len(x)
    return coeff_form(x, m, piecewise(n, m, lambda i: i / m, 2.0, lambda i: (n - i + 1) / m))


def ha1(x, m):
    n = len(x)
    return coeff_form(x, m, piecewise(n, m, lambda i: 1.5, 2.0, lambda i: 1.5))


def ha2(x, m):
    n = len(x)
    return coeff_form(x, m, piecewise(n, m, lambda i: 1.25, 2.0, lambda i: 1.25))


def ha3(x, m):
    n = len(x)
    return coeff_form(x, m, piecewise(n, m, lambda i: 1 + (i - 1) / m, 2.0, lambda i: 1 + (n - i) / (2 * m)))


def nu(n, m, i):
    return piecewise(n, m, lambda i: 1 + (i - 1) / m, 2.0, lambda i: 1 + (n - i) / (2 * m))(i)


def he_vanes(x, m):
    n = len(x)
    s = sum(math.log((n + 1) / m * (x[i + m - 1] - x[i - 1])) for i in range(1, n - m + 1))
    return s / (n - m) + sum(1 / k for k in range(m, n + 1)) + math.log(m) - math.log(n + 1)


def bias_term(m, n):
    mp = mpmath.mp
    with mp.workdps(30):
        e = (
            mp.log(n) - mp.log(2 * m) + (1 - mp.mpf(2 * m) / n) * mp.digamma(2 * m)
            - mp.digamma(n + 1) + mp.mpf(2) / n * mp.fsum(mp.digamma(i + m - 1) for i in range(1, m + 1))
        )
        return float(e)


def hw1(x, m):
    return hv(x, m) - bias_term(m, len(x))


def correa_slope(x, m, i):
    """sum (X_(j) - mean)(j - i) / sum (X_(j) - mean)^2 over j = i-m..i+m."""
    win = [X(x, j) for j in range(i - m, i + m + 1)]
    mean = sum(win) / len(win)
    num = sum((v - mean) * (j - i) for v, j in zip(win, range(i - m, i + m + 1)))
    den = sum((v - mean) ** 2 for v in win)
    return num / den


def hc(x, m):
    n = len(x)
    return -sum(math.log(correa_slope(x, m, i) / n) for i in range(1, n + 1)) / n


def hw2(x, m):
    n = len(x)
    base = hc(x, m)
    star = sum(hc(x[:k] + x[k + 1:], m) for k in range(n)) / n
    return base - (n - 1) * (star - base)


def extended(x, m, a, b):
    """Z_(i+m) - Z_(i-m) with linear extension to the support bounds."""
    n = len(x)

    def lo(i):
        return a + (i - 1) / m * (x[0] - a) if i - m < 1 else X(x, i - m)

    def hi(i):
        return b - (n - i) / m * (b - x[-1]) if i + m > n else X(x, i + m)

    return [hi(i) - lo(i) for i in range(1, n + 1)]


def pasha_bounds(x, literal=False):
    n = len(x)
    r = (x[-1] - x[0]) / (n - 1)
    return x[0] - r, (x[-1] - r if literal else x[-1] + r)


def he2(x, m, a, b):
    n = len(x)

    def d(i):
        if i <= m:
            return 1 + (i + 1) / m - i / m**2
        if i >= n - m:
            return 1 + (n - i) / (m + 1)
        return 2.0

    g = extended(x, m, a, b)
    return sum(math.log(n / (d(i) * m) * g[i - 1]) for i in range(1, n + 1)) / n


def hp_pasha(x, m, literal=False):
    n = len(x)
    a, b = pasha_bounds(x, literal)
    d = piecewise(n, m, lambda i: 1 + i / (i - 1 + m), 2.0, lambda i: 1 + (n - i + 1) / (n - i + m))
    g = extended(x, m, a, b)
    return sum(math.log(n / (d(i) * m) * g[i - 1]) for i in range(1, n + 1)) / n


def hps_park(x, m):
    n = len(x)

    def xi(i):
        return sum(X(x, j) for j in range(i - m, i + m)) / (2 * m)

    return sum(math.log(n * (xi(i + 1) - xi(i))) for i in range(1, n + 1)) / n


def moving_average(x, w):
    n = len(x)
    h = (w - 1) // 2
    y = []
    for i in range(1, n + 1):
        if i <= h:
            y.append(sum(x[:i]) / i)
        elif i <= n - h:
            y.append(sum(x[i - h - 1:i + h]) / w)
        else:
            y.append(sum(x[i - 1:]) / (n - i + 1))
    return y


def kohansal_c(m, n):
    return -(1 - 2 * m / n) * float(mpmath.digamma(2 * m)) + float(mpmath.digamma(n + 1)) - 2 / n * sum(
        float(mpmath.digamma(i + m - 1)) for i in range(1, m + 1)
    )


def hk1(x, m, w=3):
    n = len(x)
    y = moving_average(x, w)
    return sum(math.log(X(y, i + m - 1) - X(y, i - m - 1)) for i in range(1, n + 1)) / n + kohansal_c(m, n)


def hk2(x, m, w=3, literal=False):
    n = len(x)
    y = moving_average(x, w)
    last = n - m if literal else n - m + 1
    s = sum(math.log(X(y, i + m - 1) - X(y, i - 1)) for i in range(2, last + 1))
    return s / (n - m) + sum(1 / k for k in range(m, n + 1))


def bitaraf_t(x, m, i, j, boundary, denom):
    n = len(x)
    w = 2.0 if m - j + 1 <= i <= n - m + j else boundary
    return n * (X(x, i + m - j) - X(x, i - m + j)) / (w * denom)


def hb_logs(x, m):
    n = len(x)
    return [
        math.log((bitaraf_t(x, m, i, 0, 1.0, m) + bitaraf_t(x, m, i, 1, 1.0, m - 1)) / 2)
        for i in range(1, n + 1)
    ]


def hb1(x, m):
    return sum(hb_logs(x, m)) / len(x)


def hb2(x, m, literal=False):
    lt = hb_logs(x, m)
    n = len(x)
    norm = 2 * n if literal else 2 * (n - 1)
    return (lt[0] + lt[-1] + 2 * sum(lt[1:-1])) / norm


def hj(x, m):
    n = len(x)
    total = 0.0
    for i in range(1, n + 1):
        if i <= m:
            s = (m / n) / (X(x, i + m) - x[0])
        elif i >= n - m + 1:
            s = (m / n) / (x[-1] - X(x, i - m))
        else:
            s = correa_slope(x, m, i) / n
        total += math.log(s)
    return -total / n


def hm(x, m):
    n = len(x)
    return sum(
        math.log((bitaraf_t(x, m, i, 0, 4 / 3, m) + bitaraf_t(x, m, i, 1, 4 / 3, m - 2)) / 2)
        for i in range(1, n + 1)
    ) / n


def hd_mixture(x, m):
    """-int f log f for f(t) = (1/n) sum_j 1{X_(j-m) <= t <= X_(j+m)} / (X_(j+m) - X_(j-m))."""
    n = len(x)
    total = 0.0
    for k in range(1, n):
        lo, hi = x[k - 1], x[k]
        if hi <= lo:
            continue
        t = 0.5 * (lo + hi)
        f = sum(
            1.0 / (X(x, j + m) - X(x, j - m))
            for j in range(1, n + 1)
            if X(x, j - m) <= t <= X(x, j + m)
        ) / n
        total -= (hi - lo) * f * math.log(f)
    return total


# -- kernel density ------------------------------------------------------------


def phi(t):
    return math.exp(-0.5 * t * t) / math.sqrt(2 * math.pi)


def std(x):
    n = len(x)
    mu = sum(x) / n
    return math.sqrt(sum((v - mu) ** 2 for v in x) / (n - 1))


def bandwidth(x):
    return 1.06 * std(x) * len(x) ** -0.2


def fhat(t, x, h):
    return sum(phi((t - v) / h) for v in x) / (len(x) * h)


def hal(x):
    h = bandwidth(x)
    return -sum(math.log(fhat(v, x, h)) for v in x) / len(x)


def han(x, m):
    xs = sorted(x)
    n = len(xs)
    h = bandwidth(xs)
    return -sum(
        math.log((fhat(X(xs, i + m), xs, h) - fhat(X(xs, i - m), xs, h)) / 2) for i in range(1, n + 1)
    ) / n


def zamanzade_b(xs, m, h):
    n = len(xs)
    f = [fhat(v, xs, h) for v in xs]
    b = []
    for i in range(1, n + 1):
        k1 = 1 if i <= m else i - m
        k2 = i + m if i <= n - m else n
        mass = sum((f[j] + f[j - 1]) / 2 * (xs[j] - xs[j - 1]) for j in range(k1, k2))
        b.append((X(xs, i + m) - X(xs, i - m)) / mass)
    return b


def hza1(x, m):
    xs = sorted(x)
    b = zamanzade_b(xs, m, bandwidth(xs))
    return sum(math.log(v) for v in b) / len(b)


def hza2(x, m):
    xs = sorted(x)
    n = len(xs)
    b = zamanzade_b(xs, m, bandwidth(xs))
    raw = [m + i - 1 if i <= m else (n - i + m if i >= n - m + 1 else 2 * m) for i in range(1, n + 1)]
    tot = sum(raw)
    return sum(w / tot * math.log(v) for w, v in zip(raw, b))


def han2(x, m):
    xs = sorted(x)
    n = len(xs)
    h = bandwidth(xs)
    total = 0.0
    for i in range(1, n + 1):
        if m + 1 <= i <= n - m:
            s = (2 * m / n) / (xs[i + m - 1] - xs[i - m - 1])
        else:
            s = fhat(xs[i - 1], xs, h)
        total += math.log(s)
    return -total / n


# -- nearest neighbours ----------------------------------------------------------


def kth_distance(points, i, k):
    """k-th smallest Euclidean distance from row i to the other rows."""
    d = sorted(
        math.dist(points[i], p) for j, p in enumerate(points) if j != i
    )
    return d[k - 1]


def ball(d):
    return math.pi ** (d / 2) / math.gamma(d / 2 + 1)


def qhat(t, xs, h, literal=False):
    """Kernel quantile density at t.

    Literal: the printed boundary term added to q_bar. Default: q_bar divided
    by the kernel mass (1/(n h)) sum K((t - i/n)/h) on the nodes.
    """
    n = len(xs)
    w = [phi((t - i / n) / h) for i in range(1, n)]
    q = sum(wi * (xs[i] - xs[i - 1]) for i, wi in zip(range(1, n), w)) / h
    if literal:
        return q + (phi((t - 1) / h) * xs[-1] - phi(t / h) * xs[0]) / h
    return q / (sum(w) / (n * h))


def hb_eps(x, eps, h, literal=False):
    xs = sorted(x)
    ends = eps * (math.log(qhat(eps, xs, h, literal)) + math.log(qhat(1 - eps, xs, h, literal)))
    integral = mpmath.quad(lambda t: mpmath.log(qhat(float(t), xs, h, literal)), [eps, 0.5, 1 - eps])
    return ends + float(integral)


def hbe(x, eps, h, literal=False):
    xs = sorted(x)
    n = len(xs)
    ends = eps * (math.log(qhat(eps, xs, h, literal)) + math.log(qhat(1 - eps, xs, h, literal)))
    idx = range(max(math.floor(eps * n), 1), math.floor((1 - eps) * n) + 1)
    # F_n at the i-th order statistic of a tie-free sample is i/n
    terms = [math.log(qhat(i / n, xs, h, literal)) for i in idx]
    weight = 1 / n if literal else (1 - 2 * eps) / len(terms)
    return ends + weight * sum(terms)
