"""Monte Carlo evaluation of entropy estimators on laws with known entropy.

Each grid cell draws ``replicates`` independent samples, evaluates one
estimator on each and reduces the estimates to RMSE, absolute bias and a
five-number summary. Replicate ``r`` of a cell with seed ``s`` always
uses the stream ``SeedSequence(s, spawn_key=(r,))``, so a cell's result
does not depend on how its replicates are split across workers.
"""

import enum
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields

import numpy as np

from . import registry
from .errors import AllReplicatesFailed, ConfigError, EstimatorError
from .samples import OrderedSample, PointCloud

THREADS_ENV = "DIFFENTROPY_THREADS"


class Kind(str, enum.Enum):
    UNIFORM01 = "uniform"
    STD_NORMAL = "normal"
    STD_EXPONENTIAL = "exponential"


_ENTROPY_1D = {
    Kind.UNIFORM01: 0.0,
    Kind.STD_NORMAL: 0.5 * math.log(2 * math.pi * math.e),
    Kind.STD_EXPONENTIAL: 1.0,
}


@dataclass(frozen=True)
class TestDistribution:
    """A d-dimensional law with independent identically distributed components."""

    __test__ = False  # not a pytest class

    kind: Kind
    d: int = 1

    def __post_init__(self):
        try:
            object.__setattr__(self, "kind", Kind(self.kind))
        except ValueError:
            names = ", ".join(k.value for k in Kind)
            raise ConfigError(f"unknown distribution {self.kind!r}; expected one of {names}") from None
        if isinstance(self.d, bool) or int(self.d) != self.d or self.d < 1:
            raise ConfigError(f"dimension must be a positive integer, got {self.d!r}")
        object.__setattr__(self, "d", int(self.d))


def true_entropy(dist):
    """Differential entropy in nats; additive over the d components."""
    return dist.d * _ENTROPY_1D[dist.kind]


def replicate_rng(seed, r):
    """Independent generator for replicate ``r`` of a cell seeded with ``seed``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(r,))))


def sample(dist, n, rng):
    """Draw n i.i.d. points: an :class:`OrderedSample` at d = 1, else a :class:`PointCloud`."""
    if n < 1:
        raise ConfigError(f"sample size must be >= 1, got {n}")
    shape = (n, dist.d)
    if dist.kind is Kind.UNIFORM01:
        x = rng.random(shape)
    elif dist.kind is Kind.STD_NORMAL:
        x = rng.standard_normal(shape)
    else:
        x = rng.standard_exponential(shape)
    return OrderedSample(x[:, 0]) if dist.d == 1 else PointCloud(x)


def _as_estimates(estimates):
    e = np.asarray(estimates, dtype=float).ravel()
    if e.size == 0:
        raise ValueError("estimates must be nonempty")
    return e


def rmse(estimates, truth):
    """Root mean squared deviation of the estimates from the truth."""
    e = _as_estimates(estimates)
    return float(np.sqrt(np.mean((e - truth) ** 2)))


def abs_bias(estimates, truth):
    """Absolute difference between the mean estimate and the truth."""
    e = _as_estimates(estimates)
    return float(abs(np.mean(e) - truth))


@dataclass(frozen=True)
class GridCell:
    """One (distribution, n, estimator, parameter) Monte Carlo experiment.

    ``estimator`` is a registry id or a callable taking the sample and
    returning nats. ``param`` is the window m or neighbour order k.
    ``options`` holds estimator extras passed to :func:`registry.evaluate`
    (``paper_literal``, ``epsilon``, ``w``, ``panels``).
    """

    distribution: TestDistribution
    n: int
    estimator: object
    param: int = None
    replicates: int = 1
    seed: int = 0
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if isinstance(self.replicates, bool) or int(self.replicates) != self.replicates \
                or self.replicates < 1:
            raise ConfigError(f"replicates must be a positive integer, got {self.replicates!r}")
        if not 0 <= int(self.seed) < 2**64:
            raise ConfigError(f"seed must fit in 64 bits, got {self.seed}")
        if not callable(self.estimator):
            registry.validate(self.estimator, self.n, self.distribution.d, self.param,
                              epsilon=self.options.get("epsilon", 0.05))

    @property
    def estimator_name(self):
        if callable(self.estimator):
            return getattr(self.estimator, "__name__", "callable")
        return registry.info(self.estimator).id

    @property
    def param_name(self):
        return "" if callable(self.estimator) else registry.info(self.estimator).param


@dataclass(frozen=True)
class MetricRow:
    """Aggregated result of one grid cell; field order is the CSV column order."""

    distribution: str
    d: int
    n: int
    estimator: str
    param_name: str
    param_value: object
    n_reps: int
    failures: int
    rmse: float
    abs_bias: float
    mean: float
    min: float
    q1: float
    median: float
    q3: float
    max: float
    seed: int

    @classmethod
    def columns(cls):
        return [f.name for f in fields(cls)]

    def values(self):
        return [getattr(self, name) for name in self.columns()]


def _evaluate(cell, data):
    if callable(cell.estimator):
        return float(cell.estimator(data))
    return registry.evaluate(cell.estimator, data, cell.param, **cell.options)


def run_replicates(cell, start, stop):
    """Estimates for replicates ``start..stop-1``; NaN marks a failed replicate."""
    out = np.full(stop - start, np.nan)
    for j, r in enumerate(range(start, stop)):
        data = sample(cell.distribution, cell.n, replicate_rng(cell.seed, r))
        try:
            out[j] = _evaluate(cell, data)
        except EstimatorError:
            pass
    return out


def default_workers():
    """Worker count from the environment, defaulting to 1."""
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        workers = int(raw)
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if workers < 1:
        raise ConfigError(f"{THREADS_ENV} must be >= 1, got {workers}")
    return workers


def collect_estimates(cell, workers=None):
    """All replicate estimates of a cell in replicate order (NaN = failure)."""
    workers = default_workers() if workers is None else int(workers)
    N = cell.replicates
    if workers <= 1 or N < 2:
        return run_replicates(cell, 0, N)
    bounds = np.linspace(0, N, min(workers, N) + 1).astype(int)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(run_replicates, [cell] * (len(bounds) - 1), bounds[:-1], bounds[1:])
        return np.concatenate(list(parts))


def summarize(cell, estimates):
    """Reduce replicate estimates to a :class:`MetricRow`."""
    estimates = np.asarray(estimates, dtype=float)
    ok = estimates[~np.isnan(estimates)]
    failures = int(estimates.size - ok.size)
    if ok.size == 0:
        raise AllReplicatesFailed(
            f"{cell.estimator_name}: all {estimates.size} replicates raised estimator errors"
        )
    truth = true_entropy(cell.distribution)
    q = np.quantile(ok, [0.0, 0.25, 0.5, 0.75, 1.0])
    return MetricRow(
        distribution=cell.distribution.kind.value,
        d=cell.distribution.d,
        n=cell.n,
        estimator=cell.estimator_name,
        param_name=cell.param_name,
        param_value="" if cell.param is None else cell.param,
        n_reps=int(estimates.size),
        failures=failures,
        rmse=rmse(ok, truth),
        abs_bias=abs_bias(ok, truth),
        mean=float(np.mean(ok)),
        min=float(q[0]),
        q1=float(q[1]),
        median=float(q[2]),
        q3=float(q[3]),
        max=float(q[4]),
        seed=int(cell.seed),
    )


def failed_row(cell):
    """Row for a cell whose replicates all failed: metrics are NaN."""
    nan = float("nan")
    return MetricRow(
        cell.distribution.kind.value, cell.distribution.d, cell.n, cell.estimator_name,
        cell.param_name, "" if cell.param is None else cell.param, cell.replicates,
        cell.replicates, nan, nan, nan, nan, nan, nan, nan, nan, int(cell.seed),
    )


def run_cell(cell, workers=None):
    """Run every replicate of ``cell`` and aggregate.

    Replicates raising an estimator error are counted in ``failures`` and
    excluded from the metrics. The result is identical for any ``workers``.

    Raises
    ------
    AllReplicatesFailed
        If no replicate produced an estimate.
    """
    return summarize(cell, collect_estimates(cell, workers))
