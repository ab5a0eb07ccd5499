"""Benchmark games: N-card Kuhn poker and N-rank Leduc hold'em.

Kuhn observation tokens are "<card>?" for player 1's hole card and "?<card>"
for player 2's, matching the corpus deal tokens.  Leduc observations use
poker card text ("As", "2h"); a flop observation is the hole card text
concatenated with the board card text ("AsKh").  Betting actions are one
character each: c = check, B = bet, C = call, f = fold, R = raise, and the
public part of an infoset key is the betting history in those characters
(rounds separated by "/"), never the board card, which enters through the
flop observation instead.
"""

from __future__ import annotations

from dataclasses import dataclass

from .efg import GameTree, chance, decision, terminal

RANK_CHARS = "23456789TJQKA"
SUIT_CHARS = "cdhs"

CHECK, BET, CALL, FOLD, RAISE = "c", "B", "C", "f", "R"


@dataclass(frozen=True)
class Card:
    rank: int  # 0-based, 0 = deuce
    suit: str

    def __post_init__(self):
        if self.suit not in SUIT_CHARS:
            raise ValueError(f"unknown suit {self.suit!r}")
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")


def card_text(card: Card) -> str:
    """Two-character text, rank char then suit char (Ace of spades -> 'As')."""
    if card.rank >= len(RANK_CHARS):
        raise ValueError(f"rank {card.rank} has no textual name")
    return RANK_CHARS[card.rank] + card.suit


@dataclass(frozen=True)
class KuhnSpec:
    """Kuhn poker with a deck of ``num_cards`` ordinal cards, ante 1, bet 1."""

    num_cards: int = 3
    ante: int = 1
    bet: int = 1

    def __post_init__(self):
        if self.num_cards < 2:
            raise ValueError("Kuhn poker needs at least 2 cards")


@dataclass(frozen=True)
class LeducSpec:
    """Leduc hold'em with ``num_ranks`` ranks in hearts and spades.

    Ante 1; bet size 2 preflop and 4 on the flop; at most two bets (a bet
    plus one raise) per round, and raises add the round's bet size.
    ``first_actor`` opens both betting rounds (player 1 by default).
    """

    num_ranks: int = 13
    ante: int = 1
    preflop_bet: int = 2
    flop_bet: int = 4
    first_actor: int = 0

    def __post_init__(self):
        if self.num_ranks < 2:
            raise ValueError("Leduc hold'em needs at least 2 ranks")
        if self.first_actor not in (0, 1):
            raise ValueError("first_actor must be 0 or 1")

    @property
    def deck(self) -> list[Card]:
        return [Card(r, s) for r in range(self.num_ranks) for s in ("h", "s")]


def kuhn_deal_token(player: int, card: int) -> str:
    return f"{card}?" if player == 0 else f"?{card}"


def build_kuhn(spec: KuhnSpec) -> GameTree:
    """Kuhn poker game tree.

    Chance deals player 1 then player 2 a distinct card uniformly, so every
    ordered pair has probability 1/(n*(n-1)).  One betting round with at most
    one bet; the higher card wins at showdown, and a folding player loses the
    chips they committed.
    """
    n = spec.num_cards
    ante, bet = float(spec.ante), float(spec.bet)

    def betting(c1: int, c2: int):
        obs1 = (kuhn_deal_token(0, c1),)
        obs2 = (kuhn_deal_token(1, c2),)
        sign = 1.0 if c1 > c2 else -1.0

        facing_bet_p1 = decision(
            0, obs1, "cB", (FOLD, CALL),
            [terminal(-ante), terminal(sign * (ante + bet))],
        )
        after_check = decision(
            1, obs2, "c", (CHECK, BET),
            [terminal(sign * ante), facing_bet_p1],
        )
        facing_bet_p2 = decision(
            1, obs2, "B", (FOLD, CALL),
            [terminal(ante), terminal(sign * (ante + bet))],
        )
        return decision(0, obs1, "", (CHECK, BET), [after_check, facing_bet_p2])

    root = chance(
        [
            (
                kuhn_deal_token(0, c1),
                1.0 / n,
                chance(
                    [
                        (kuhn_deal_token(1, c2), 1.0 / (n - 1), betting(c1, c2))
                        for c2 in range(n)
                        if c2 != c1
                    ]
                ),
            )
            for c1 in range(n)
        ]
    )
    return GameTree.from_root(root, name=f"kuhn{n}")


def _betting_round(obs, prefix, bet, committed, cont, first=0):
    """Betting round with at most a bet plus one raise.

    ``obs`` holds both players' observation tuples (indexed by player) and
    ``committed`` the pair of chips already in the pot.  ``first`` opens the
    round.  ``cont(public, committed)`` builds the subtree reached when both
    players stay in, where ``public`` is the prefix plus this round's
    betting string (written from the opener's perspective).  A folding
    player loses exactly the chips they committed.
    """
    second = 1 - first

    def fold(folder, pots):
        return terminal(float(pots[1]) if folder == 1 else float(-pots[0]))

    def add(pots, player, amount):
        if player == 0:
            return (pots[0] + amount, pots[1])
        return (pots[0], pots[1] + amount)

    pots_b = add(committed, first, bet)  # opener bet
    pots_br = add(pots_b, second, 2 * bet)  # ... and was raised
    pots_cb = add(committed, second, bet)  # opener checked, second bet
    pots_cbr = add(pots_cb, first, 2 * bet)  # ... and was raised

    facing_raise_first = decision(
        first, obs[first], prefix + "BR", (FOLD, CALL),
        [fold(first, pots_br),
         cont(prefix + "BRC", add(pots_br, first, bet))],
    )
    facing_bet_second = decision(
        second, obs[second], prefix + "B", (FOLD, CALL, RAISE),
        [fold(second, pots_b),
         cont(prefix + "BC", add(pots_b, second, bet)),
         facing_raise_first],
    )
    facing_raise_second = decision(
        second, obs[second], prefix + "cBR", (FOLD, CALL),
        [fold(second, pots_cbr),
         cont(prefix + "cBRC", add(pots_cbr, second, bet))],
    )
    facing_bet_first = decision(
        first, obs[first], prefix + "cB", (FOLD, CALL, RAISE),
        [fold(first, pots_cb),
         cont(prefix + "cBC", add(pots_cb, first, bet)),
         facing_raise_second],
    )
    after_check = decision(
        second, obs[second], prefix + "c", (CHECK, BET),
        [cont(prefix + "cc", committed), facing_bet_first],
    )
    return decision(
        first, obs[first], prefix, (CHECK, BET),
        [after_check, facing_bet_second],
    )


def build_leduc(spec: LeducSpec) -> GameTree:
    """Leduc hold'em game tree.

    Two hole cards dealt without replacement, a preflop betting round, a
    public board card, a flop betting round, then showdown: a player pairing
    the board wins the pot, otherwise the higher hole rank wins and equal
    ranks split (u1 = 0).
    """
    deck = spec.deck
    n = len(deck)

    def showdown_value(hole1, hole2, board, pot_each):
        if hole1.rank == board.rank:
            return float(pot_each)
        if hole2.rank == board.rank:
            return float(-pot_each)
        if hole1.rank > hole2.rank:
            return float(pot_each)
        if hole1.rank < hole2.rank:
            return float(-pot_each)
        return 0.0

    def flop(hole1, hole2, board, prefix, committed):
        t1, t2, tb = card_text(hole1), card_text(hole2), card_text(board)
        obs = ((t1, t1 + tb), (t2, t2 + tb))

        def showdown(_public, pots):
            assert pots[0] == pots[1]
            return terminal(showdown_value(hole1, hole2, board, pots[0]))

        return _betting_round(
            obs, prefix, spec.flop_bet, committed, showdown,
            first=spec.first_actor,
        )

    def deal(hole1, hole2):
        obs = ((card_text(hole1),), (card_text(hole2),))
        remaining = [c for c in deck if c != hole1 and c != hole2]

        def reveal(public, committed):
            return chance(
                [
                    (
                        "b" + card_text(bc),
                        1.0 / len(remaining),
                        flop(hole1, hole2, bc, public + "/", committed),
                    )
                    for bc in remaining
                ]
            )

        return _betting_round(
            obs, "", spec.preflop_bet,
            (float(spec.ante), float(spec.ante)), reveal,
            first=spec.first_actor,
        )

    root = chance(
        [
            (
                card_text(c1) + "?",
                1.0 / n,
                chance(
                    [
                        ("?" + card_text(c2), 1.0 / (n - 1), deal(c1, c2))
                        for c2 in deck
                        if c2 != c1
                    ]
                ),
            )
            for c1 in deck
        ]
    )
    return GameTree.from_root(root, name=f"leduc{spec.num_ranks}")


# ---------------------------------------------------------------------------
# Strength orderings for the bucketing baseline
# ---------------------------------------------------------------------------


def strength_order(kind: str, n: int) -> list:
    """Observations of a clustering domain ordered weakest first.

    kind "kuhn": the ``n`` card ordinals (shared by both players).
    kind "leduc-preflop": the 2n hole-card texts, by rank then suit.
    kind "leduc-flop": the 2n*(2n-1) (hole, board) pair texts; unpaired
    observations ordered by hole rank then board rank, then all paired
    observations (hole rank equals board rank) strongest, ordered by rank.
    """
    if kind == "kuhn":
        return list(range(n))
    spec = LeducSpec(num_ranks=n)
    deck = spec.deck
    if kind == "leduc-preflop":
        ordered = sorted(deck, key=lambda c: (c.rank, c.suit))
        return [card_text(c) for c in ordered]
    if kind == "leduc-flop":
        unpaired = []
        paired = []
        for hole in deck:
            for board in deck:
                if board == hole:
                    continue
                if hole.rank == board.rank:
                    paired.append((hole, board))
                else:
                    unpaired.append((hole, board))
        unpaired.sort(key=lambda p: (p[0].rank, p[1].rank, p[0].suit, p[1].suit))
        paired.sort(key=lambda p: (p[0].rank, p[0].suit))
        return [card_text(h) + card_text(b) for h, b in unpaired + paired]
    raise ValueError(f"unknown strength-order kind {kind!r}")
