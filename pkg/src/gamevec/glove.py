"""GloVe-style embedding training on action corpora.

Co-occurrence accumulation uses a symmetric window with 1/distance
weighting that never crosses line boundaries.  Training minimizes

    sum_ij f(X_ij) * (w_i . wc_j + b_i + bc_j - log X_ij)^2,
    f(x) = (x / x_max)^alpha for x < x_max, else 1,

with per-coordinate adaptive-gradient steps (accumulators start at 1, so
the first step size is exactly eta), the standard recipe for this model
family.  Parameters and their defaults follow the usual 50-dimensional
setup: vector_size=50, max_iter=100, window_size=10, x_max=10, alpha=0.75,
eta=0.075, seed=42, min_count=20.

All state is initialized uniformly in (-0.5/d, 0.5/d) from the seed, the
entry order is a single seeded shuffle, and updates run sequentially, so
training is deterministic.  The inner loop is numba-compiled when numba is
importable and falls back to pure Python otherwise (same arithmetic).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .corpus import Corpus, Vocabulary
from .embeddings import EmbeddingTable

try:
    import numba

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    _HAVE_NUMBA = False


class TrainingDiverged(RuntimeError):
    def __init__(self, iteration: int):
        super().__init__(f"non-finite loss at iteration {iteration}")
        self.iteration = iteration


@dataclass(frozen=True)
class GloveParams:
    vector_size: int = 50
    max_iter: int = 100
    window_size: int = 10
    x_max: float = 10.0
    alpha: float = 0.75
    eta: float = 0.075
    seed: int = 42
    min_count: int = 20

    def __post_init__(self):
        if min(self.vector_size, self.max_iter, self.window_size,
               self.min_count) < 1:
            raise ValueError("size/iteration parameters must be positive")
        if self.x_max <= 0 or self.eta <= 0:
            raise ValueError("x_max and eta must be positive")
        if not 0 < self.alpha <= 1:
            raise ValueError("alpha must lie in (0, 1]")


@dataclass
class CoocTable:
    """Sparse symmetric co-occurrence weights over vocabulary ids.

    Both (i, j) and (j, i) are stored; ``tokens[i]`` is the token with id i.
    """

    tokens: list[str]
    rows: np.ndarray
    cols: np.ndarray
    weights: np.ndarray

    @property
    def nnz(self) -> int:
        return len(self.weights)

    def weight(self, a: str, b: str) -> float:
        i, j = self.tokens.index(a), self.tokens.index(b)
        mask = (self.rows == i) & (self.cols == j)
        return float(self.weights[mask].sum())


def build_cooccurrence(
    corpus: Corpus, vocab: Vocabulary, window_size: int
) -> CoocTable:
    """Accumulate 1/distance co-occurrence counts within each line.

    For every position t and offset d in 1..window_size with both tokens in
    the vocabulary, 1/d is added to X[t, t+d] and to X[t+d, t]; windows do
    not cross lines.
    """
    if window_size < 1:
        raise ValueError("window_size must be >= 1")
    ids = []
    line_no = []
    for li, line in enumerate(corpus.lines):
        for token in line:
            ids.append(vocab.ids.get(token, -1))
            line_no.append(li)
    ids = np.asarray(ids, dtype=np.int64)
    line_no = np.asarray(line_no, dtype=np.int64)
    n = len(vocab)
    rows, cols, vals = [], [], []
    for delta in range(1, window_size + 1):
        if delta >= len(ids):
            break
        left = ids[:-delta]
        right = ids[delta:]
        ok = (left >= 0) & (right >= 0) & (line_no[:-delta] == line_no[delta:])
        if not ok.any():
            continue
        w = np.full(int(ok.sum()), 1.0 / delta)
        rows.extend((left[ok], right[ok]))
        cols.extend((right[ok], left[ok]))
        vals.extend((w, w))
    if not rows:
        return CoocTable(list(vocab.tokens), np.zeros(0, np.int64),
                         np.zeros(0, np.int64), np.zeros(0))
    coo = sp.coo_matrix(
        (np.concatenate(vals),
         (np.concatenate(rows), np.concatenate(cols))),
        shape=(n, n),
    ).tocsr().tocoo()  # csr round-trip coalesces duplicates, sorts entries
    return CoocTable(
        tokens=list(vocab.tokens),
        rows=coo.row.astype(np.int64),
        cols=coo.col.astype(np.int64),
        weights=coo.data.astype(np.float64),
    )


@dataclass
class GloveModel:
    """Raw trained state: main/context vectors and biases, by token id."""

    tokens: list[str]
    main: np.ndarray
    context: np.ndarray
    bias_main: np.ndarray
    bias_context: np.ndarray

    def embedding_table(self) -> EmbeddingTable:
        summed = self.main + self.context
        return EmbeddingTable(
            dimension=summed.shape[1],
            vectors={t: summed[i].copy() for i, t in enumerate(self.tokens)},
            provenance="trained",
        )


def _epoch_python(rows, cols, logx, fw, W, Wc, b, bc, gW, gWc, gb, gbc, eta):
    total = 0.0
    d = W.shape[1]
    for n in range(len(rows)):
        i = rows[n]
        j = cols[n]
        dot = 0.0
        for k in range(d):
            dot += W[i, k] * Wc[j, k]
        diff = dot + b[i] + bc[j] - logx[n]
        total += fw[n] * diff * diff
        fdiff = fw[n] * diff
        for k in range(d):
            t1 = fdiff * Wc[j, k]
            t2 = fdiff * W[i, k]
            W[i, k] -= eta * t1 / np.sqrt(gW[i, k])
            Wc[j, k] -= eta * t2 / np.sqrt(gWc[j, k])
            gW[i, k] += t1 * t1
            gWc[j, k] += t2 * t2
        b[i] -= eta * fdiff / np.sqrt(gb[i])
        bc[j] -= eta * fdiff / np.sqrt(gbc[j])
        gb[i] += fdiff * fdiff
        gbc[j] += fdiff * fdiff
    return total


if _HAVE_NUMBA:
    _epoch_fast = numba.njit(cache=True, fastmath=False)(_epoch_python)
else:  # pragma: no cover
    _epoch_fast = _epoch_python


def fit_glove(
    cooc: CoocTable, params: GloveParams
) -> tuple[GloveModel, np.ndarray]:
    """Train a model on a co-occurrence table.

    Returns the model plus the per-iteration objective values (each measured
    on the state entries were seen with during that sweep).
    """
    if cooc.nnz == 0:
        raise ValueError("empty co-occurrence table")
    n = len(cooc.tokens)
    d = params.vector_size
    rng = np.random.default_rng(params.seed)
    scale = 0.5 / d

    def init(*shape):
        return rng.uniform(-scale, scale, size=shape)

    W = init(n, d)
    Wc = init(n, d)
    b = init(n)
    bc = init(n)
    gW = np.ones((n, d))
    gWc = np.ones((n, d))
    gb = np.ones(n)
    gbc = np.ones(n)
    order = rng.permutation(cooc.nnz)
    rows = cooc.rows[order]
    cols = cooc.cols[order]
    logx = np.log(cooc.weights[order])
    fw = np.minimum((cooc.weights[order] / params.x_max) ** params.alpha, 1.0)
    losses = np.empty(params.max_iter)
    for it in range(params.max_iter):
        losses[it] = _epoch_fast(
            rows, cols, logx, fw, W, Wc, b, bc, gW, gWc, gb, gbc, params.eta
        )
        if not np.isfinite(losses[it]):
            raise TrainingDiverged(it)
    model = GloveModel(list(cooc.tokens), W, Wc, b, bc)
    return model, losses


def train_glove(cooc: CoocTable, params: GloveParams) -> EmbeddingTable:
    """Fit vectors and return the summed main+context embedding table."""
    model, _ = fit_glove(cooc, params)
    return model.embedding_table()


def glove_loss(cooc: CoocTable, model: GloveModel,
               x_max: float = 10.0, alpha: float = 0.75) -> float:
    """The weighted least-squares objective of a model on a table."""
    fw = np.minimum((cooc.weights / x_max) ** alpha, 1.0)
    diffs = (
        np.einsum(
            "nd,nd->n", model.main[cooc.rows], model.context[cooc.cols]
        )
        + model.bias_main[cooc.rows]
        + model.bias_context[cooc.cols]
        - np.log(cooc.weights)
    )
    return float(np.sum(fw * diffs * diffs))
