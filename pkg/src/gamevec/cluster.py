"""Deterministic k-means clustering with k-means++ seeding.

Empty clusters are deliberately retained: a centroid that loses all its
points keeps its previous position instead of being reseeded, so the number
of non-empty buckets in a result can be smaller than the requested k.
Everything is driven by a seeded generator, making results reproducible
bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class ClusterResult:
    assignments: np.ndarray  # int32[n], centroid index per point
    centroids: np.ndarray  # (k, d)
    inertia: float  # sum of squared distances to assigned centroid
    iterations: int


def _squared_distances(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """(n, k) squared Euclidean distances, clipped at zero for float noise."""
    sq = (
        np.sum(points**2, axis=1)[:, None]
        - 2.0 * points @ centers.T
        + np.sum(centers**2, axis=1)[None, :]
    )
    return np.maximum(sq, 0.0)


def _kmeans_pp_init(points, k, rng):
    n = len(points)
    centers = np.empty((k, points.shape[1]))
    centers[0] = points[rng.integers(n)]
    closest = _squared_distances(points, centers[:1])[:, 0]
    for i in range(1, k):
        total = closest.sum()
        if total > 0:
            probs = closest / total
            pick = rng.choice(n, p=probs)
        else:
            pick = rng.integers(n)
        centers[i] = points[pick]
        closest = np.minimum(
            closest, _squared_distances(points, centers[i:i + 1])[:, 0]
        )
    return centers


def kmeans(points, k, seed, max_iter=100, tol=1e-6) -> ClusterResult:
    """Lloyd's algorithm from k-means++ seeds, deterministic given ``seed``.

    Stops when the largest centroid movement drops below ``tol`` or after
    ``max_iter`` iterations.  Ties in assignment go to the lowest centroid
    index.
    """
    points = np.asarray(points, dtype=np.float64)
    if points.ndim != 2:
        raise ValueError("points must be a 2-D array (n, d)")
    n = len(points)
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > n:
        raise ValueError(f"k={k} exceeds the number of points ({n})")
    rng = np.random.default_rng(seed)
    centers = _kmeans_pp_init(points, k, rng)
    iterations = 0
    for _ in range(max_iter):
        iterations += 1
        labels = np.argmin(_squared_distances(points, centers), axis=1)
        new_centers = centers.copy()
        for j in range(k):
            members = points[labels == j]
            if len(members):
                new_centers[j] = members.mean(axis=0)
        shift = np.max(np.linalg.norm(new_centers - centers, axis=1))
        centers = new_centers
        if shift < tol:
            break
    labels = np.argmin(_squared_distances(points, centers), axis=1)
    inertia = float(
        np.sum((points - centers[labels]) ** 2)
    )
    return ClusterResult(
        assignments=labels.astype(np.int32),
        centroids=centers,
        inertia=inertia,
        iterations=iterations,
    )


def random_assignment(n_items: int, k: int, seed) -> np.ndarray:
    """Independent uniform bucket draw per item."""
    if k < 1:
        raise ValueError("k must be >= 1")
    rng = np.random.default_rng(seed)
    return rng.integers(0, k, size=n_items).astype(np.int32)


def hand_bucketing(ordered_observations, k: int) -> np.ndarray:
    """Contiguous buckets along a weakest-first strength ordering.

    Returns one bucket id per observation, aligned with the ordering.
    Bucket sizes differ by at most one, with the remainder going to the
    earliest buckets.  When k exceeds the number of observations the
    trailing buckets are simply empty (every observation gets its own
    bucket), which keeps oversized bucket counts lossless instead of
    failing.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    n_items = len(ordered_observations)
    if k >= n_items:
        return np.arange(n_items, dtype=np.int32)
    base, rem = divmod(n_items, k)
    sizes = np.full(k, base, dtype=np.int64)
    sizes[:rem] += 1
    return np.repeat(np.arange(k, dtype=np.int32), sizes)
