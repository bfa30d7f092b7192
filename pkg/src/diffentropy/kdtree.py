"""Exact k-nearest-neighbour search.

:class:`KDTree` is an axis-aligned space-partitioning tree queried leaf by
leaf: all points of one leaf are answered together against candidate
leaves ordered by box distance. :func:`brute_force_knn` is the O(n^2)
reference. Both compute distances through :func:`_sq_dist` and rank
neighbours by (rounded distance, index), so they agree bit for bit, including
which point wins a distance tie.
"""

import numpy as np

BRUTE_FORCE_BELOW = 32


def _sq_dist(q, p):
    """Squared Euclidean distances between rows of ``q`` and rows of ``p``.

    Coordinates are accumulated in a fixed order so that the value for a
    pair never depends on the shape of the batch it was computed in.
    """
    acc = (q[:, None, 0] - p[None, :, 0]) ** 2
    for c in range(1, q.shape[1]):
        acc = acc + (q[:, None, c] - p[None, :, c]) ** 2
    return acc


def _sq_norm(g):
    """Row sums of squares, accumulated in the same order as :func:`_sq_dist`."""
    acc = g[..., 0] ** 2
    for c in range(1, g.shape[-1]):
        acc = acc + g[..., c] ** 2
    return acc


def _select(d2, idx, k):
    """Keep the k smallest entries per row ordered by (distance, idx).

    Ranking is on the rounded distance sqrt(d2), the value reported, so two
    squared distances one ulp apart that share a root tie and go to the
    lower index.
    """
    order = np.lexsort((idx, np.sqrt(d2)), axis=-1)[:, :k]
    return np.take_along_axis(d2, order, axis=1), np.take_along_axis(idx, order, axis=1)


def _check_k(k, n):
    if isinstance(k, bool) or int(k) != k or not 1 <= int(k) <= n - 1:
        raise ValueError(f"k must be an integer in [1, {n - 1}], got {k!r}")
    return int(k)


def brute_force_knn(points, k):
    """k nearest neighbours of every point among the others, by exhaustive search.

    Returns ``(distances, indices)``, each of shape ``(n, k)``, sorted by
    distance with ties broken by ascending index.
    """
    points = np.asarray(points, dtype=float)
    if points.ndim == 1:
        points = points[:, None]
    n = points.shape[0]
    k = _check_k(k, n)
    d2 = _sq_dist(points, points)
    np.fill_diagonal(d2, np.inf)
    idx = np.broadcast_to(np.arange(n), (n, n))
    d2, nbr = _select(d2, idx, k)
    return np.sqrt(d2), nbr


class _Leaf:
    __slots__ = ("index", "lo", "hi")

    def __init__(self, index, pts):
        self.index = index
        self.lo = pts.min(axis=0)
        self.hi = pts.max(axis=0)


class KDTree:
    """Exact kd-tree over an ``n x d`` array.

    Splits at the median of the widest coordinate until a node holds at
    most ``leafsize`` points. Construction happens once; queries only read.
    """

    def __init__(self, points, leafsize=16):
        points = np.asarray(points, dtype=float)
        if points.ndim == 1:
            points = points[:, None]
        self.points = points
        self.leafsize = max(int(leafsize), 1)
        self.leaves = []
        self._build(np.arange(points.shape[0]))

    def _build(self, index):
        pts = self.points[index]
        if index.size <= self.leafsize:
            self.leaves.append(_Leaf(index, pts))
            return
        spread = pts.max(axis=0) - pts.min(axis=0)
        axis = int(np.argmax(spread))
        if spread[axis] == 0:
            self.leaves.append(_Leaf(index, pts))
            return
        order = np.argsort(pts[:, axis], kind="stable")
        half = index.size // 2
        self._build(index[order[:half]])
        self._build(index[order[half:]])

    def query_all(self, k):
        """k nearest neighbours of every indexed point, excluding itself.

        Same return convention as :func:`brute_force_knn`.
        """
        n = self.points.shape[0]
        k = _check_k(k, n)
        out_d2 = np.empty((n, k))
        out_idx = np.empty((n, k), dtype=np.int64)
        for leaf in self.leaves:
            d2, idx = self._query_leaf(leaf, k)
            out_d2[leaf.index] = d2
            out_idx[leaf.index] = idx
        return np.sqrt(out_d2), out_idx

    def _query_leaf(self, leaf, k):
        q = self.points[leaf.index]
        nq = q.shape[0]
        d2 = _sq_dist(q, q)
        d2[np.arange(nq), np.arange(nq)] = np.inf
        idx = np.broadcast_to(leaf.index, (nq, leaf.index.size))
        if idx.shape[1] < k:
            pad = k - idx.shape[1]
            d2 = np.hstack([d2, np.full((nq, pad), np.inf)])
            idx = np.hstack([idx, np.full((nq, pad), np.iinfo(np.int64).max)])
        best_d2, best_idx = _select(d2, idx, k)

        others = [o for o in self.leaves if o is not leaf]
        gap = [np.maximum(np.maximum(o.lo - leaf.hi, leaf.lo - o.hi), 0.0) for o in others]
        box_d2 = [float(_sq_norm(g)) for g in gap]
        for pos in np.argsort(box_d2, kind="stable"):
            # compare roots: pruning must agree with the ranking in _select
            bound = np.sqrt(best_d2[:, -1])
            if np.sqrt(box_d2[pos]) > bound.max():
                break
            other = others[pos]
            g = np.maximum(np.maximum(other.lo - q, q - other.hi), 0.0)
            near = np.sqrt(_sq_norm(g)) <= bound
            if not near.any():
                continue
            cand_d2 = _sq_dist(q[near], self.points[other.index])
            cand_idx = np.broadcast_to(other.index, cand_d2.shape)
            merged_d2, merged_idx = _select(
                np.hstack([best_d2[near], cand_d2]),
                np.hstack([best_idx[near], cand_idx]),
                k,
            )
            best_d2[near] = merged_d2
            best_idx[near] = merged_idx
        return best_d2, best_idx


def knn(points, k, leafsize=16):
    """k nearest neighbours of every point; kd-tree unless ``n`` is small."""
    points = np.asarray(points, dtype=float)
    if points.ndim == 1:
        points = points[:, None]
    if points.shape[0] < BRUTE_FORCE_BELOW:
        return brute_force_knn(points, k)
    return KDTree(points, leafsize=leafsize).query_all(k)
