"""Special functions used by the estimators.

Scalar implementations with no table dependence: digamma by upward
recurrence plus the asymptotic series, log-gamma by the same shift plus the
Stirling series.
"""

import math

from .errors import DomainError

EULER_GAMMA = 0.57721566490153286061

# Bernoulli numbers B_2k for k = 1..7
_B2K = (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6)

_SHIFT = 10.0


def _check(x):
    x = float(x)
    if not math.isfinite(x) or x <= 0:
        raise DomainError(f"argument must be positive and finite, got {x!r}")
    return x


def digamma(x):
    """Digamma function psi(x) = d/dx log Gamma(x) for x > 0.

    The argument is shifted above 6 with psi(x) = psi(x + 1) - 1/x, then
    psi(x) ~ log x - 1/(2x) - sum B_2k / (2k x^2k), truncated at x^-12.
    """
    x = _check(x)
    acc = 0.0
    while x < 6.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    p = inv2
    for k, b in enumerate(_B2K[:6], start=1):
        series += b / (2 * k) * p
        p *= inv2
    return acc + math.log(x) - 0.5 / x - series


def log_gamma(x):
    """Natural log of the gamma function for x > 0."""
    x = _check(x)
    shift = 0.0
    while x < _SHIFT:
        shift += math.log(x)
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    series = 0.0
    p = inv
    for k, b in enumerate(_B2K, start=1):
        series += b / (2 * k * (2 * k - 1)) * p
        p *= inv2
    return (x - 0.5) * math.log(x) - x + 0.5 * math.log(2 * math.pi) + series - shift


def harmonic(k):
    """Partial harmonic sum 1 + 1/2 + ... + 1/k, with harmonic(0) = 0."""
    k = int(k)
    if k < 0:
        raise DomainError(f"harmonic number needs k >= 0, got {k}")
    return math.fsum(1.0 / i for i in range(1, k + 1))


def unit_ball_volume(d):
    """Volume pi^(d/2) / Gamma(d/2 + 1) of the Euclidean unit ball in R^d."""
    d = int(d)
    if d < 1:
        raise DomainError(f"dimension must be >= 1, got {d}")
    return math.exp(0.5 * d * math.log(math.pi) - log_gamma(0.5 * d + 1.0))
