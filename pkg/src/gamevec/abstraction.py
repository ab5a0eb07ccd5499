"""Information abstraction: bucket observations and relabel infosets.

An :class:`AbstractionMap` assigns every observation of a clustering domain
to a bucket.  Abstracting a game replaces the observation components of each
infoset with bucket ids and merges infosets whose relabeled identities
coincide; tree topology, chance probabilities and utilities stay untouched,
so the abstract game shares the node arrays of the original.  An equilibrium
of the abstract game is lifted back by giving every original infoset the
action distribution of its abstract image.

Three bucketing methods are provided: k-means over embedding vectors, a
uniform random baseline, and strength-ordered hand bucketing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import games
from .cluster import hand_bucketing, kmeans, random_assignment
from .efg import GameTree, Infoset, infoset_key
from .solver import BehavioralProfile


@dataclass(frozen=True)
class Domain:
    """A clustering domain: a named, ordered set of observation tokens."""

    name: str
    observations: tuple[str, ...]

    def __len__(self):
        return len(self.observations)


def kuhn_deal_domain(num_cards: int) -> Domain:
    """All (player, card) deal events, row player's events first."""
    obs = [games.kuhn_deal_token(0, c) for c in range(num_cards)]
    obs += [games.kuhn_deal_token(1, c) for c in range(num_cards)]
    return Domain(f"kuhn-deal-{num_cards}", tuple(obs))


def leduc_preflop_domain(num_ranks: int = 13) -> Domain:
    """All hole-card texts, in strength order."""
    return Domain(
        f"leduc-preflop-{num_ranks}",
        tuple(games.strength_order("leduc-preflop", num_ranks)),
    )


def leduc_flop_domain(num_ranks: int = 13) -> Domain:
    """All (hole, board) pair texts, in strength order."""
    return Domain(
        f"leduc-flop-{num_ranks}",
        tuple(games.strength_order("leduc-flop", num_ranks)),
    )


def domain_for(name: str) -> Domain:
    """Parse a domain spec string like 'kuhn:256' or 'leduc-flop:13'."""
    kind, _, size = name.partition(":")
    n = int(size) if size else 13
    if kind == "kuhn":
        return kuhn_deal_domain(n)
    if kind == "leduc-preflop":
        return leduc_preflop_domain(n)
    if kind == "leduc-flop":
        return leduc_flop_domain(n)
    raise ValueError(f"unknown domain {name!r}")


@dataclass
class AbstractionMap:
    """Observation -> bucket assignment for one clustering domain."""

    domain: Domain
    assignment: dict[str, int]
    k: int
    method: str  # kmeans | random | hand_bucketing
    seed: int | None = None

    def __post_init__(self):
        missing = [o for o in self.domain.observations
                   if o not in self.assignment]
        if missing:
            raise ValueError(
                f"assignment missing {len(missing)} observations "
                f"(e.g. {missing[0]!r})"
            )

    @property
    def non_empty_buckets(self) -> int:
        return len(set(self.assignment.values()))

    def bucket(self, observation: str) -> int:
        return self.assignment[observation]

    def to_json(self) -> str:
        doc = {
            "domain": self.domain.name,
            "observations": list(self.domain.observations),
            "method": self.method,
            "k": self.k,
            "seed": self.seed,
            "assignment": [
                int(self.assignment[o]) for o in self.domain.observations
            ],
        }
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text: str) -> "AbstractionMap":
        doc = json.loads(text)
        observations = tuple(doc["observations"])
        return cls(
            domain=Domain(doc["domain"], observations),
            assignment=dict(zip(observations, doc["assignment"])),
            k=int(doc["k"]),
            method=doc["method"],
            seed=doc["seed"],
        )

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json())

    @classmethod
    def load(cls, path) -> "AbstractionMap":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(fh.read())


# ---------------------------------------------------------------------------
# Map builders
# ---------------------------------------------------------------------------


def identity_abstraction(domain: Domain) -> AbstractionMap:
    """Each observation its own bucket (lossless)."""
    return AbstractionMap(
        domain=domain,
        assignment={o: i for i, o in enumerate(domain.observations)},
        k=len(domain),
        method="hand_bucketing",
    )


def random_abstraction(domain: Domain, k: int, seed) -> AbstractionMap:
    buckets = random_assignment(len(domain), k, seed)
    return AbstractionMap(
        domain=domain,
        assignment=dict(zip(domain.observations, buckets.tolist())),
        k=k,
        method="random",
        seed=int(seed),
    )


def hand_bucket_abstraction(domain: Domain, k: int) -> AbstractionMap:
    """Strength-ordered contiguous buckets of the dealt card.

    Hand bucketing partitions the cards revealed by chance, not the joint
    observations the embedding methods cluster: for the Kuhn deal domain the
    card ordinals are bucketed once and shared by both players' deal events,
    and for the Leduc flop domain the 2n board cards are bucketed by rank
    and every (hole, board) pair inherits its board's bucket.  With k at
    least the number of dealt cards the abstraction is lossless, which is
    what makes large-k bucketing bottom out near zero exploitability.
    """
    if domain.name.startswith("kuhn-deal"):
        num_cards = len(domain) // 2
        order = games.strength_order("kuhn", num_cards)
        buckets = hand_bucketing(order, k)
        by_card = {card: int(b) for card, b in zip(order, buckets)}
        assignment = {}
        for player in (0, 1):
            for card in range(num_cards):
                token = games.kuhn_deal_token(player, card)
                assignment[token] = by_card[card]
        return AbstractionMap(domain, assignment, k, "hand_bucketing")
    if domain.name.startswith("leduc-flop"):
        num_ranks = len(_flop_boards(domain)) // 2
        boards = games.strength_order("leduc-preflop", num_ranks)
        buckets = hand_bucketing(boards, k)
        by_board = {b: int(x) for b, x in zip(boards, buckets)}
        assignment = {
            pair: by_board[pair[2:]] for pair in domain.observations
        }
        return AbstractionMap(domain, assignment, k, "hand_bucketing")
    buckets = hand_bucketing(domain.observations, k)
    assignment = dict(zip(domain.observations, (int(b) for b in buckets)))
    return AbstractionMap(domain, assignment, k, "hand_bucketing")


def _flop_boards(domain: Domain) -> set[str]:
    """Board-card texts appearing in a (hole, board) pair domain."""
    return {pair[2:] for pair in domain.observations}


def embed_cluster_abstraction(table, domain: Domain, k: int, seed) -> AbstractionMap:
    """k-means over the domain's embedding vectors (one joint clustering).

    A ``k`` past the domain size is clamped to one cluster per observation
    (the requested ``k`` is still recorded), so exponentially growing grids
    can overshoot the domain and simply saturate at lossless.
    """
    missing = [o for o in domain.observations if o not in table]
    if missing:
        raise KeyError(
            f"embedding table missing {len(missing)} domain tokens: "
            f"{missing[:8]}"
        )
    points = np.stack([table[o] for o in domain.observations])
    result = kmeans(points, min(k, len(points)), seed)
    return AbstractionMap(
        domain=domain,
        assignment=dict(
            zip(domain.observations, (int(b) for b in result.assignments))
        ),
        k=k,
        method="kmeans",
        seed=int(seed),
    )


# ---------------------------------------------------------------------------
# Game abstraction and lifting
# ---------------------------------------------------------------------------


def _relabel(obs: tuple[str, ...], lookup: dict[str, int]) -> tuple[str, ...]:
    out = []
    for token in obs:
        bucket = lookup.get(token)
        if bucket is None:
            raise KeyError(f"observation {token!r} not covered by any map")
        out.append(str(bucket))
    return tuple(out)


def _merged_lookup(maps) -> dict[str, int]:
    lookup = {}
    for m in maps:
        lookup.update(m.assignment)
    return lookup


def abstract_game(game: GameTree, maps) -> GameTree:
    """Relabel observations with bucket ids, merging identical infosets.

    ``maps`` is one AbstractionMap per clustering domain appearing in the
    game's infoset observations.  The returned game shares the original's
    node arrays; only the infoset table changes.
    """
    if isinstance(maps, AbstractionMap):
        maps = [maps]
    lookup = _merged_lookup(maps)
    new_infosets: list[Infoset] = []
    new_ids: dict[str, int] = {}
    remap = np.empty(len(game.infosets), dtype=np.int32)
    relabeled: list[tuple[str, ...]] = []
    for i, inf in enumerate(game.infosets):
        obs = _relabel(inf.obs, lookup)
        relabeled.append(obs)
        key = infoset_key(inf.player, obs, inf.public)
        new_id = new_ids.get(key)
        if new_id is None:
            new_id = len(new_infosets)
            new_ids[key] = new_id
            if inf.parent is None:
                parent = None
            else:
                parent = (int(remap[inf.parent[0]]), inf.parent[1])
            new_infosets.append(
                Infoset(inf.player, obs, inf.public, inf.actions, parent)
            )
        else:
            rec = new_infosets[new_id]
            if rec.actions != inf.actions:
                raise ValueError(
                    f"merged infosets disagree on actions at {key}"
                )
            if inf.parent is None:
                parent = None
            else:
                parent = (int(remap[inf.parent[0]]), inf.parent[1])
            if rec.parent != parent:
                raise ValueError(
                    f"abstraction breaks perfect recall at {key}"
                )
        remap[i] = new_id
    return game._relabeled(new_infosets, remap, name=game.name + "-abs")


def lift_strategy(
    abstract_profile: BehavioralProfile, maps, original_game: GameTree
) -> BehavioralProfile:
    """Play an abstract strategy in the original game.

    Every original infoset receives the action distribution of its abstract
    image (actions keep their order under relabeling).
    """
    if isinstance(maps, AbstractionMap):
        maps = [maps]
    lookup = _merged_lookup(maps)
    lifted = ({}, {})
    for inf in original_game.infosets:
        abstract_key = infoset_key(
            inf.player, _relabel(inf.obs, lookup), inf.public
        )
        source = abstract_profile.for_player(inf.player)
        if abstract_key not in source:
            raise KeyError(
                f"abstract profile missing image infoset {abstract_key}"
            )
        lifted[inf.player][inf.key] = source[abstract_key]
    return BehavioralProfile(lifted)
