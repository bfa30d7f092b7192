"""Exception hierarchy.

Estimator failures derive from :class:`EstimatorError`; the benchmark engine
counts those as failed replicates instead of aborting a cell.
"""


class EntropyError(ValueError):
    """Base class for every error raised by this package."""


class DomainError(EntropyError):
    """Argument outside the domain of a special function."""


class DataError(EntropyError):
    """Input data cannot form a valid sample (parse errors, NaN, wrong shape)."""


class ConfigError(EntropyError):
    """Invalid benchmark configuration."""


class EstimatorError(EntropyError):
    """An estimator is undefined for the given sample or parameters."""


class DegenerateSpacing(EstimatorError):
    """A zero spacing (tied observations) would enter a logarithm."""


class InvalidWindow(EstimatorError):
    """Window size ``m`` is outside the range the estimator accepts."""


class MissingParam(EstimatorError):
    """A parameter the estimator requires was not supplied or is invalid."""


class SingularSlope(EstimatorError):
    """Local regression window has zero variance."""


class DegenerateSample(EstimatorError):
    """Zero sample variance or a singular covariance matrix."""


class NonpositiveDensityDifference(EstimatorError):
    """A density difference entering a logarithm is not positive."""


class NonpositiveQuantileDensity(EstimatorError):
    """The kernel quantile density estimate is not positive somewhere."""


class DimensionUnsupported(EstimatorError):
    """Estimator is only defined for univariate data."""


class DuplicatePoint(EstimatorError):
    """A k-th nearest neighbour distance is exactly zero."""


class KTooLarge(EstimatorError):
    """``k`` is not smaller than the sample size."""


class AllReplicatesFailed(EntropyError):
    """Every replicate of a benchmark cell raised an estimator error."""
