"""Validated univariate ordered samples and multivariate point clouds."""

import numpy as np

from .errors import DataError, DegenerateSpacing, InvalidWindow


class OrderedSample:
    """Order statistics X_(1) <= ... <= X_(n) of a univariate sample.

    Construction sorts the data once; the original order is discarded.
    Order-statistic indices are 1-based and clamp outside ``[1, n]``.
    """

    __slots__ = ("_values",)

    def __init__(self, data):
        values = np.asarray(data, dtype=float)
        if values.ndim == 2 and values.shape[1] == 1:
            values = values[:, 0]
        if values.ndim != 1:
            raise DataError(f"univariate sample must be 1-D, got shape {values.shape}")
        if values.size == 0:
            raise DataError("sample is empty")
        if not np.all(np.isfinite(values)):
            raise DataError("sample contains NaN or infinite values")
        values = np.sort(values)
        values.flags.writeable = False
        self._values = values

    @property
    def values(self):
        return self._values

    @property
    def n(self):
        return self._values.size

    def __len__(self):
        return self._values.size

    def __repr__(self):
        return f"OrderedSample(n={self.n})"

    def at(self, idx):
        """Clamped order statistics for an integer array of 1-based indices."""
        idx = np.clip(np.asarray(idx), 1, self.n)
        return self._values[idx - 1]


class PointCloud:
    """An ``n x d`` sample of observation vectors."""

    __slots__ = ("_points",)

    def __init__(self, data):
        points = np.array(data, dtype=float)
        if points.ndim == 1:
            points = points[:, None]
        if points.ndim != 2:
            raise DataError(f"point cloud must be 2-D, got shape {points.shape}")
        if points.shape[0] == 0 or points.shape[1] == 0:
            raise DataError("point cloud is empty")
        if not np.all(np.isfinite(points)):
            raise DataError("point cloud contains NaN or infinite values")
        points.flags.writeable = False
        self._points = points

    @property
    def points(self):
        return self._points

    @property
    def n(self):
        return self._points.shape[0]

    @property
    def d(self):
        return self._points.shape[1]

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"PointCloud(n={self.n}, d={self.d})"


def as_ordered(sample):
    return sample if isinstance(sample, OrderedSample) else OrderedSample(sample)


def as_cloud(sample):
    if isinstance(sample, PointCloud):
        return sample
    if isinstance(sample, OrderedSample):
        return PointCloud(sample.values)
    return PointCloud(sample)


def check_window(m, n):
    """Validate a window size: ``1 <= m <= n // 2``. Returns ``int(m)``."""
    if isinstance(m, bool) or int(m) != m:
        raise InvalidWindow(f"window size must be an integer, got {m!r}")
    m = int(m)
    if not 1 <= m <= n // 2:
        raise InvalidWindow(f"window size m={m} outside [1, {n // 2}] for n={n}")
    return m


def clamped_order(sample, i):
    """X_(i) with X_(i) = X_(1) for i < 1 and X_(i) = X_(n) for i > n."""
    sample = as_ordered(sample)
    return float(sample.at(int(i)))


def spacing(sample, i, m, *, log=False):
    """The m-spacing X_(i+m) - X_(i-m) around the i-th order statistic.

    With ``log=True`` the logarithm is returned and a zero spacing raises
    :class:`DegenerateSpacing`.
    """
    sample = as_ordered(sample)
    m = check_window(m, sample.n)
    gap = float(sample.at(int(i) + m) - sample.at(int(i) - m))
    if not log:
        return gap
    if gap <= 0:
        raise DegenerateSpacing(f"zero spacing at i={i}, m={m} (tied observations)")
    return float(np.log(gap))


def _parse_lines(text, source):
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.replace(",", " ").split()
        try:
            rows.append([float(f) for f in fields])
        except ValueError:
            raise DataError(f"{source}:{lineno}: cannot parse {raw!r}") from None
    if not rows:
        raise DataError(f"{source}: no observations")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise DataError(f"{source}: rows have differing numbers of coordinates {sorted(widths)}")
    return np.array(rows, dtype=float)


def read_points(path):
    """Read a data file into a :class:`PointCloud`.

    One observation per line, coordinates separated by whitespace or commas.
    Blank lines and lines starting with ``#`` are skipped.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from None
    return PointCloud(_parse_lines(text, path))


def read_sample(path):
    """Read a one-column data file into an :class:`OrderedSample`."""
    cloud = read_points(path)
    if cloud.d != 1:
        raise DataError(f"{path}: expected one value per line, got {cloud.d} columns")
    return OrderedSample(cloud.points[:, 0])
