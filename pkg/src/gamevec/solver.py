"""Equilibrium computation by counterfactual regret minimization.

The solver works entirely in sequence form: per iteration it computes the
gradient of each player's utility (a sparse matrix-vector product with the
aggregated terminal-utility matrix) and then runs one regret-matching sweep
over the player's treeplex, level by level, with numpy segment operations.
No randomness is involved anywhere, so two runs with identical inputs
produce bit-identical results.

Variants
--------
``cfr``       simultaneous updates, plain regret matching, uniform averaging.
``cfr_plus``  alternating updates, regret matching+ (regrets floored at zero
              after every update) and linear averaging (iteration t weighted
              by t), which converges much faster in practice.

Exploitability of a profile is the average of both players' best-response
gains, computed with a single bottom-up maximization pass per player over
the same treeplex structure.
"""

from __future__ import annotations

import gzip
import json
import time
from dataclasses import dataclass

import numpy as np

from .efg import (
    PLAYER1,
    PLAYER2,
    GameTree,
    PlayerSequences,
    SequenceIndex,
)


@dataclass
class BehavioralProfile:
    """Per-player map from infoset key to an action distribution."""

    strategies: tuple[dict[str, np.ndarray], dict[str, np.ndarray]]

    def for_player(self, player: int) -> dict[str, np.ndarray]:
        return self.strategies[player]

    def validate(self, tol=1e-9):
        for player in (PLAYER1, PLAYER2):
            for key, probs in self.strategies[player].items():
                probs = np.asarray(probs)
                if np.any(probs < -tol) or abs(probs.sum() - 1.0) > tol:
                    raise ValueError(f"invalid distribution at infoset {key}")


def uniform_profile(game: GameTree) -> BehavioralProfile:
    index = game.sequence_index()
    out = ({}, {})
    for player in (PLAYER1, PLAYER2):
        ps = index.for_player(player)
        for i, key in enumerate(ps.keys):
            n = int(ps.num_actions[i])
            out[player][key] = np.full(n, 1.0 / n)
    return BehavioralProfile(out)


@dataclass
class SolveReport:
    iterations: int
    exploitability: float
    wall_time: float


# ---------------------------------------------------------------------------
# Treeplex sweeps
# ---------------------------------------------------------------------------


def _regret_matching(regrets: np.ndarray, ps: PlayerSequences) -> np.ndarray:
    """Per-infoset distribution proportional to positive regrets (uniform
    where all regrets are nonpositive)."""
    sigma = np.zeros(ps.dimension)
    if ps.dimension == 1:
        return sigma
    pos = np.maximum(regrets, 0.0)
    sums = np.add.reduceat(pos, ps.first_seq)
    denom = np.repeat(sums, ps.num_actions)
    fallback = np.repeat(1.0 / ps.num_actions, ps.num_actions)
    body = np.where(denom > 0.0, pos[1:] / np.where(denom > 0, denom, 1.0),
                    fallback)
    sigma[1:] = body
    return sigma


def _cf_update(regrets, sigma, gradient, ps: PlayerSequences, plus: bool):
    """Add counterfactual regrets for one player; floors at zero when
    ``plus``."""
    w = gradient.copy()
    for lvl in reversed(ps.levels):
        if not len(lvl.seq_ids):
            continue
        wseq = w[lvl.seq_ids]
        v = np.add.reduceat(sigma[lvl.seq_ids] * wseq, lvl.starts)
        updated = regrets[lvl.seq_ids] + (wseq - np.repeat(v, lvl.nact))
        if plus:
            np.maximum(updated, 0.0, out=updated)
        regrets[lvl.seq_ids] = updated
        w += np.bincount(lvl.pid, weights=v, minlength=len(w))
    return regrets


def _best_response_value(gradient, ps: PlayerSequences) -> float:
    """Value of the utility-maximizing strategy against a fixed gradient."""
    w = gradient.copy()
    for lvl in reversed(ps.levels):
        if not len(lvl.seq_ids):
            continue
        best = np.maximum.reduceat(w[lvl.seq_ids], lvl.starts)
        w += np.bincount(lvl.pid, weights=best, minlength=len(w))
    return float(w[0])


def _best_response_strategy(gradient, ps: PlayerSequences):
    """(value, argmax behavioral strategy) against a fixed gradient."""
    w = gradient.copy()
    picks = np.zeros(len(ps.keys), dtype=np.int64)
    for lvl in reversed(ps.levels):
        if not len(lvl.seq_ids):
            continue
        wseq = w[lvl.seq_ids]
        best = np.maximum.reduceat(wseq, lvl.starts)
        for pos, inf in enumerate(lvl.inf_local):
            lo = lvl.starts[pos]
            hi = lo + lvl.nact[pos]
            picks[inf] = int(np.argmax(wseq[lo:hi]))
        w += np.bincount(lvl.pid, weights=best, minlength=len(w))
    strategy = {}
    for i, key in enumerate(ps.keys):
        probs = np.zeros(int(ps.num_actions[i]))
        probs[picks[i]] = 1.0
        strategy[key] = probs
    return float(w[0]), strategy


def _gradients(matrix, x, y):
    """Sequence-form utility gradients for the maximizers of both players."""
    g_row = matrix.tocsr() @ y
    g_col = -(matrix.tocsr_t() @ x)
    return g_row, g_col


def _normalized(xbar):
    return xbar / xbar[0] if xbar[0] > 0 else xbar


def _exploitability_xy(matrix, index: SequenceIndex, x, y) -> float:
    g_row, g_col = _gradients(matrix, x, y)
    br1 = _best_response_value(g_row, index.row)
    br2 = _best_response_value(g_col, index.col)
    return 0.5 * (br1 + br2)


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------


def solve(
    game: GameTree,
    max_iterations: int = 100_000,
    target_eps: float = 1e-6,
    variant: str = "cfr_plus",
) -> tuple[BehavioralProfile, SolveReport]:
    """Approximate a Nash equilibrium; returns the average profile.

    Stops once the exploitability of the running average profile drops to
    ``target_eps`` (checked every 64 iterations) or after ``max_iterations``.
    """
    if max_iterations < 1:
        raise ValueError("max_iterations must be >= 1")
    if variant not in ("cfr", "cfr_plus"):
        raise ValueError(f"unknown solver variant {variant!r}")
    start = time.perf_counter()
    index = game.sequence_index()
    matrix = game.utility_matrix()
    tp1, tp2 = index.row, index.col
    r1 = np.zeros(tp1.dimension)
    r2 = np.zeros(tp2.dimension)
    xbar = np.zeros(tp1.dimension)
    ybar = np.zeros(tp2.dimension)
    plus = variant == "cfr_plus"
    iterations = 0
    eps = np.inf
    for t in range(1, max_iterations + 1):
        weight = float(t) if plus else 1.0
        sigma1 = _regret_matching(r1, tp1)
        x = tp1.realization(sigma1)
        sigma2 = _regret_matching(r2, tp2)
        y = tp2.realization(sigma2)
        xbar += weight * x
        ybar += weight * y
        if plus:
            # Alternating: player 1 updates against y, player 2 against the
            # refreshed player-1 strategy.
            g1 = matrix.tocsr() @ y
            r1 = _cf_update(r1, sigma1, g1, tp1, plus=True)
            x_new = tp1.realization(_regret_matching(r1, tp1))
            g2 = -(matrix.tocsr_t() @ x_new)
            r2 = _cf_update(r2, sigma2, g2, tp2, plus=True)
        else:
            g1, g2 = _gradients(matrix, x, y)
            r1 = _cf_update(r1, sigma1, g1, tp1, plus=False)
            r2 = _cf_update(r2, sigma2, g2, tp2, plus=False)
        iterations = t
        if t % 64 == 0 or t == max_iterations:
            eps = _exploitability_xy(
                matrix, index, _normalized(xbar), _normalized(ybar)
            )
            if eps <= target_eps:
                break
    profile = BehavioralProfile(
        (
            tp1.sequence_to_behavior(_normalized(xbar)),
            tp2.sequence_to_behavior(_normalized(ybar)),
        )
    )
    report = SolveReport(
        iterations=iterations,
        exploitability=float(eps),
        wall_time=time.perf_counter() - start,
    )
    return profile, report


def best_response(
    game: GameTree, opponent: BehavioralProfile, player: int
) -> tuple[float, dict[str, np.ndarray]]:
    """Best-response value and strategy for ``player`` against ``opponent``.

    The value is the maximum expected utility of ``player`` over all their
    strategies, holding the opponent (and chance) fixed; the returned
    strategy attains it.
    """
    index = game.sequence_index()
    matrix = game.utility_matrix()
    opp = PLAYER2 if player == PLAYER1 else PLAYER1
    opp_ps = index.for_player(opp)
    opp_strategy = opponent.for_player(opp)
    missing = [k for k in opp_ps.keys if k not in opp_strategy]
    if missing:
        raise KeyError(f"opponent profile missing infoset {missing[0]}")
    reach = opp_ps.behavior_to_sequence(opp_strategy)
    if player == PLAYER1:
        gradient = matrix.tocsr() @ reach
    else:
        gradient = -(matrix.tocsr_t() @ reach)
    return _best_response_strategy(gradient, index.for_player(player))


def exploitability(game: GameTree, profile: BehavioralProfile) -> float:
    """Average best-response gain against the profile (0 at equilibrium)."""
    index = game.sequence_index()
    matrix = game.utility_matrix()
    x = index.row.behavior_to_sequence(profile.for_player(PLAYER1))
    y = index.col.behavior_to_sequence(profile.for_player(PLAYER2))
    return _exploitability_xy(matrix, index, x, y)


def game_value(game: GameTree, profile: BehavioralProfile) -> float:
    """Row player's expected utility under the profile."""
    index = game.sequence_index()
    matrix = game.utility_matrix()
    x = index.row.behavior_to_sequence(profile.for_player(PLAYER1))
    y = index.col.behavior_to_sequence(profile.for_player(PLAYER2))
    return float(x @ (matrix.tocsr() @ y))


# ---------------------------------------------------------------------------
# Strategy persistence
# ---------------------------------------------------------------------------


def save_strategy(profile: BehavioralProfile, path: str) -> None:
    """Write a profile as JSON (gzip-compressed for .gz paths)."""
    doc = {
        "player1": {k: [float(p) for p in v]
                    for k, v in profile.for_player(PLAYER1).items()},
        "player2": {k: [float(p) for p in v]
                    for k, v in profile.for_player(PLAYER2).items()},
    }
    data = json.dumps(doc).encode()
    if str(path).endswith(".gz"):
        with gzip.open(path, "wb") as fh:
            fh.write(data)
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def load_strategy(path: str) -> BehavioralProfile:
    if str(path).endswith(".gz"):
        with gzip.open(path, "rb") as fh:
            doc = json.loads(fh.read())
    else:
        with open(path, "rb") as fh:
            doc = json.loads(fh.read())
    return BehavioralProfile(
        (
            {k: np.asarray(v, dtype=np.float64)
             for k, v in doc["player1"].items()},
            {k: np.asarray(v, dtype=np.float64)
             for k, v in doc["player2"].items()},
        )
    )
