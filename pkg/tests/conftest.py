import numpy as np
import pytest

from gamevec import (
    CHANCE,
    PLAYER1,
    PLAYER2,
    TERMINAL,
    GameTree,
    KuhnSpec,
    LeducSpec,
    build_kuhn,
    build_leduc,
    decision,
    terminal,
)


# ---------------------------------------------------------------------------
# Independent oracles (tree walks over the flat node arrays; these never go
# through the sequence-form code paths they are used to check).
# ---------------------------------------------------------------------------


def tree_walk_value(game: GameTree, profile) -> float:
    """Recursive expected row-player utility under a behavioral profile."""

    def rec(node):
        actor = game.actor[node]
        if actor == TERMINAL:
            return game.u1[node]
        kids = game.children(node)
        if actor == CHANCE:
            probs = game.chance_probs(node)
            return sum(p * rec(k) for p, k in zip(probs, kids))
        dist = profile.for_player(int(actor))[game.infoset_of(node).key]
        return sum(p * rec(k) for p, k in zip(dist, kids))

    return rec(0)


def enumerate_infosets(game: GameTree, player):
    """Infoset keys and action counts found by a plain tree walk."""
    seen = {}
    stack = [0]
    while stack:
        node = stack.pop()
        if game.actor[node] == player:
            inf = game.infoset_of(node)
            seen[inf.key] = len(inf.actions)
        stack.extend(game.children(node))
    return seen


def enumerate_terminals(game: GameTree):
    """(node id, chance reach, u1) for every terminal, by tree walk."""
    out = []
    stack = [(0, 1.0)]
    while stack:
        node, reach = stack.pop()
        actor = game.actor[node]
        if actor == TERMINAL:
            out.append((node, reach, game.u1[node]))
            continue
        kids = game.children(node)
        if actor == CHANCE:
            for p, k in zip(game.chance_probs(node), kids):
                stack.append((k, reach * p))
        else:
            for k in kids:
                stack.append((k, reach))
    return out


def random_profile(game: GameTree, rng) -> "BehavioralProfile":
    from gamevec import BehavioralProfile

    index = game.sequence_index()
    strategies = ({}, {})
    for player in (PLAYER1, PLAYER2):
        ps = index.for_player(player)
        for i, key in enumerate(ps.keys):
            raw = rng.exponential(size=int(ps.num_actions[i]))
            strategies[player][key] = raw / raw.sum()
    return BehavioralProfile(strategies)


def pure_strategies(game: GameTree, player):
    """Every pure behavioral strategy of `player` (exhaustive)."""
    import itertools

    from gamevec import PLAYER1

    index = game.sequence_index()
    ps = index.for_player(player)
    choices = [range(int(n)) for n in ps.num_actions]
    for combo in itertools.product(*choices):
        strategy = {}
        for i, key in enumerate(ps.keys):
            probs = np.zeros(int(ps.num_actions[i]))
            probs[combo[i]] = 1.0
            strategy[key] = probs
        yield strategy


def matrix_game_value(payoff: np.ndarray, iterations=200_000) -> float:
    """Minimax value of a zero-sum matrix game by regret matching (no LP).

    Independent of the tree solver: plain simultaneous regret matching on
    the normal form, averaged uniformly.
    """
    m, n = payoff.shape
    r1 = np.zeros(m)
    r2 = np.zeros(n)
    s1 = np.zeros(m)
    s2 = np.zeros(n)
    for _ in range(iterations):
        p = np.maximum(r1, 0.0)
        p = p / p.sum() if p.sum() > 0 else np.full(m, 1.0 / m)
        q = np.maximum(r2, 0.0)
        q = q / q.sum() if q.sum() > 0 else np.full(n, 1.0 / n)
        s1 += p
        s2 += q
        u1 = payoff @ q
        u2 = -(payoff.T @ p)
        r1 += u1 - p @ u1
        r2 += u2 - q @ u2
    p = s1 / s1.sum()
    q = s2 / s2.sum()
    lo = np.min(p @ payoff)
    hi = np.max(payoff @ q)
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# Shared games
# ---------------------------------------------------------------------------


def build_matching_pennies() -> GameTree:
    """2x2 matching pennies: +1 to player 1 when choices match."""

    def p2(u_h, u_t):
        return decision(
            PLAYER2, (), "", ("H", "T"), [terminal(u_h), terminal(u_t)]
        )

    root = decision(
        PLAYER1, (), "", ("H", "T"),
        [p2(1.0, -1.0), p2(-1.0, 1.0)],
    )
    return GameTree.from_root(root, name="matching-pennies")


@pytest.fixture(scope="session")
def kuhn3():
    return build_kuhn(KuhnSpec(num_cards=3))


@pytest.fixture(scope="session")
def leduc3():
    return build_leduc(LeducSpec(num_ranks=3))


@pytest.fixture(scope="session")
def matching_pennies():
    return build_matching_pennies()
