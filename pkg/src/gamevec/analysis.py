"""Nearest-neighbor queries and 2-D principal-component projection."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .embeddings import EmbeddingTable


@dataclass
class NeighborList:
    query: str
    metric: str  # euclidean | cosine
    neighbors: list[tuple[str, float]]  # (token, distance), nearest first

    def tokens(self):
        return [t for t, _ in self.neighbors]


def _distances(vectors: np.ndarray, query: np.ndarray, metric: str):
    if metric == "euclidean":
        return np.linalg.norm(vectors - query, axis=1)
    if metric == "cosine":
        norms = np.linalg.norm(vectors, axis=1) * np.linalg.norm(query)
        sims = np.where(norms > 0, vectors @ query / np.where(norms > 0,
                                                              norms, 1.0), 0.0)
        return 1.0 - sims
    raise ValueError(f"unknown metric {metric!r}")


def knn(table: EmbeddingTable, query: str, k: int,
        metric: str = "euclidean") -> NeighborList:
    """Exact k nearest neighbors of a token, ties broken lexicographically.

    The query token itself is excluded; k must be smaller than the table.
    """
    if query not in table:
        raise KeyError(f"unknown token {query!r}")
    if k >= len(table):
        raise ValueError(f"k={k} must be < table size {len(table)}")
    tokens = [t for t in table.tokens() if t != query]
    dists = _distances(table.matrix(tokens), table[query], metric)
    order = sorted(range(len(tokens)), key=lambda i: (dists[i], tokens[i]))
    return NeighborList(
        query=query,
        metric=metric,
        neighbors=[(tokens[i], float(dists[i])) for i in order[:k]],
    )


@dataclass
class Projection2D:
    coords: dict[str, tuple[float, float]]
    explained_variance: tuple[float, float]  # fractions, non-increasing


def pca2(table: EmbeddingTable, subset=None) -> Projection2D:
    """Project tokens onto their top-2 principal components.

    Vectors are mean-centered; components are orthonormal with the sign
    convention that each component's first nonzero loading is positive.
    Identical vectors are not an error: everything lands at the origin with
    zero explained variance.
    """
    tokens = list(subset) if subset is not None else table.tokens()
    if len(tokens) < 3:
        raise ValueError("projection needs at least 3 tokens")
    X = table.matrix(tokens)
    X = X - X.mean(axis=0)
    _, svals, vt = np.linalg.svd(X, full_matrices=False)
    total = float(np.sum(svals**2))
    if total < 1e-24:
        coords = {t: (0.0, 0.0) for t in tokens}
        return Projection2D(coords, (0.0, 0.0))
    components = vt[:2]
    for row in range(components.shape[0]):
        loadings = components[row]
        nonzero = np.flatnonzero(np.abs(loadings) > 1e-12)
        if len(nonzero) and loadings[nonzero[0]] < 0:
            components[row] = -loadings
    projected = X @ components.T
    if projected.shape[1] < 2:  # rank-1 data in theory; pad second axis
        projected = np.column_stack(
            [projected, np.zeros(len(tokens))]
        )
        svals = np.concatenate([svals, [0.0]])
    fractions = (
        float(svals[0] ** 2 / total),
        float(svals[1] ** 2 / total) if len(svals) > 1 else 0.0,
    )
    coords = {
        t: (float(projected[i, 0]), float(projected[i, 1]))
        for i, t in enumerate(tokens)
    }
    return Projection2D(coords, fractions)
