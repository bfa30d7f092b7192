import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

import oracles
from diffentropy.errors import DuplicatePoint, KTooLarge
from diffentropy.knn import (
    BITS,
    KnnEstimatorId as N,
    estimate_knn,
    kth_distances,
    knn_distance,
    nearest_neighbor,
    to_nats,
)
from diffentropy.specfn import EULER_GAMMA

CLOUD = [0.0, 1.0, 3.0]


@pytest.mark.parametrize("i, k, expected", [(1, 1, 1.0), (1, 2, 3.0), (3, 2, 3.0), (2, 2, 2.0)])
def test_knn_distance_examples(i, k, expected):
    assert knn_distance(CLOUD, i, k) == expected


def test_nearest_neighbor_index():
    assert nearest_neighbor(CLOUD, 3, 1).index == 2
    assert nearest_neighbor(CLOUD, 2, 1).index == 1
    with pytest.raises(IndexError):
        nearest_neighbor(CLOUD, 0, 1)
    with pytest.raises(IndexError):
        nearest_neighbor(CLOUD, 4, 1)


def test_hkl_example():
    expected = (math.log(4) + math.log(4) + math.log(8)) / 3 + EULER_GAMMA
    assert_allclose(expected, 2.1945591, atol=1e-7)
    assert_allclose(estimate_knn("HKL", CLOUD), expected, rtol=1e-14)


def test_hs_example():
    expected = math.log(2) / 3 + math.log(3) + math.log(2) + EULER_GAMMA
    assert_allclose(expected, 2.6000243, atol=1e-7)
    assert_allclose(estimate_knn("HS", CLOUD, 1), expected, rtol=1e-14)


def _formula(estimator, pts, k):
    """Printed closed forms evaluated with scalar loops."""
    n, d = pts.shape
    dist = [oracles.kth_distance(pts, i, k) for i in range(n)]
    mean_log = sum(math.log(v) for v in dist) / n
    cd = oracles.ball(d)
    psi = lambda v: float(oracles.mpmath.digamma(v))
    if estimator is N.HKL:
        return -sum(math.log(1 / ((n - 1) * cd * v**d)) for v in dist) / n + EULER_GAMMA
    if estimator is N.HVIC:
        V = d * math.pi ** (d / 2) / math.gamma(d / 2 + 1)
        return sum(math.log2((n - 1) * V * v**d) for v in dist) / n + EULER_GAMMA / math.log(2)
    if estimator is N.HS:
        return d * mean_log + math.log(n) + math.log(cd) + EULER_GAMMA - sum(1 / i for i in range(1, k))
    if estimator is N.HN:
        return d / n * sum(math.log2(v) for v in dist) + math.log2(n) + EULER_GAMMA / math.log(2) + 0.5 * math.log2(2 * math.e)
    if estimator is N.HK:
        V = 2**d * cd
        return -psi(k) + psi(n) + math.log(V) + d / n * sum(math.log(2 * v) for v in dist)
    return -psi(k) + math.log(n - 1) + math.log(cd) + d * mean_log


@pytest.mark.parametrize("estimator", list(N), ids=lambda e: e.value)
@pytest.mark.parametrize("d", [1, 2, 3])
def test_matches_printed_formula(rng, estimator, d):
    pts = rng.normal(size=(40, d))
    k = 1 if estimator in (N.HKL, N.HVIC, N.HN) else 3
    assert_allclose(estimate_knn(estimator, pts, k), _formula(estimator, pts, k), rtol=1e-12)


def test_hkl_literal_power(rng):
    pts = rng.normal(size=(30, 3))
    n = 30
    dist = [oracles.kth_distance(pts, i, 1) for i in range(n)]
    ref = sum(math.log((n - 1) * oracles.ball(3) * v) for v in dist) / n + EULER_GAMMA
    assert_allclose(estimate_knn("HKL", pts, paper_literal=True), ref, rtol=1e-12)
    x = rng.normal(size=30)
    assert estimate_knn("HKL", x, paper_literal=True) == estimate_knn("HKL", x)


def test_hl_hk_constant_difference(rng):
    for d in (1, 2):
        for _ in range(3):
            pts = rng.normal(size=(50, d))
            n, k = 50, 4
            # HK - HL = psi(n) - log(n - 1) + 2 d log 2
            gap = float(oracles.mpmath.digamma(n)) - math.log(n - 1) + 2 * d * math.log(2)
            assert_allclose(estimate_knn("HK", pts, k) - estimate_knn("HL", pts, k), gap, atol=1e-12)


def test_fixed_k_ids_ignore_k(rng):
    pts = rng.normal(size=(20, 2))
    for e in (N.HKL, N.HVIC, N.HN):
        assert estimate_knn(e, pts, 5) == estimate_knn(e, pts, 1)


@pytest.mark.parametrize("estimator", list(N), ids=lambda e: e.value)
def test_equivariance(rng, estimator):
    for _ in range(10):
        d = int(rng.integers(1, 5))
        n = int(rng.integers(10, 80))
        pts = rng.normal(size=(n, d))
        k = int(rng.integers(1, 6))
        c, a = rng.uniform(-20, 20, d), rng.uniform(0.01, 100)
        base = estimate_knn(estimator, pts, k)
        unit = math.log2(a) if estimator in BITS else math.log(a)
        assert abs(estimate_knn(estimator, pts + c, k) - base) <= 1e-9
        assert abs(estimate_knn(estimator, a * pts, k) - base - d * unit) <= 1e-9


def test_permutation_invariance(rng):
    pts = rng.normal(size=(60, 2))
    perm = rng.permutation(60)
    for e in N:
        assert_allclose(estimate_knn(e, pts[perm], 3), estimate_knn(e, pts, 3), rtol=1e-14)


def test_units():
    v = estimate_knn("HVIC", CLOUD)
    assert_allclose(to_nats("HVIC", v), v * math.log(2))
    assert to_nats("HL", 1.5) == 1.5


def test_errors():
    with pytest.raises(DuplicatePoint):
        estimate_knn("HL", [0.0, 0.0, 1.0, 2.0], 1)
    with pytest.raises(DuplicatePoint):
        kth_distances([[0.0, 1.0], [0.0, 1.0], [2.0, 2.0]], 1)
    with pytest.raises(KTooLarge):
        estimate_knn("HL", CLOUD, 3)
    with pytest.raises(KTooLarge):
        estimate_knn("HS", CLOUD, 0)
    # k-th neighbour beyond the duplicate is still usable
    assert np.isfinite(estimate_knn("HL", [0.0, 0.0, 1.0, 2.0, 4.0], 2))
