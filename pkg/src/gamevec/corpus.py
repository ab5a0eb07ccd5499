"""Action-token corpora sampled from self-play.

One playthrough per line: chance edges contribute their outcome labels
(deal tokens like "57?" / "?12", Leduc board tokens like "bKh"), decision
edges their action characters, and the line ends with a payoff token
"<u1>,<u2>".  The reader accepts any whitespace-tokenized text, so external
corpora (e.g. chess games in algebraic notation, one game per line) can be
consumed unchanged.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .efg import CHANCE, TERMINAL, GameTree
from .solver import BehavioralProfile


@dataclass
class Corpus:
    lines: list[tuple[str, ...]]

    def __len__(self):
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    def tokens(self):
        for line in self.lines:
            yield from line


@dataclass
class Vocabulary:
    """Tokens with their corpus counts and dense ids.

    Ids run 0..len-1, assigned by descending count with lexicographic
    tie-break; tokens below ``min_count`` are excluded entirely.
    """

    counts: dict[str, int]
    ids: dict[str, int]
    min_count: int
    tokens: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.tokens:
            self.tokens = sorted(self.ids, key=self.ids.get)

    def __len__(self):
        return len(self.ids)

    def __contains__(self, token):
        return token in self.ids


def build_vocab(corpus: Corpus, min_count: int) -> Vocabulary:
    if min_count < 1:
        raise ValueError("min_count must be >= 1")
    counts = Counter(corpus.tokens())
    kept = {t: c for t, c in counts.items() if c >= min_count}
    ordered = sorted(kept.items(), key=lambda item: (-item[1], item[0]))
    ids = {token: i for i, (token, _) in enumerate(ordered)}
    return Vocabulary(counts=kept, ids=ids, min_count=min_count)


def _payoff_token(u1: float) -> str:
    def fmt(v):
        return str(int(v)) if float(v).is_integer() else repr(float(v))

    return f"{fmt(u1)},{fmt(-u1)}"


class _Sampler:
    """Cached cumulative distributions for repeated tree walks."""

    def __init__(self, game: GameTree, profile: BehavioralProfile):
        self.game = game
        self.chance_cum: dict[int, np.ndarray] = {}
        index = game.sequence_index()
        # Per-infoset cumulative action distributions, by global infoset id.
        self.decision_cum = [None] * len(game.infosets)
        for player in (0, 1):
            ps = index.for_player(player)
            strategy = profile.for_player(player)
            for local, key in enumerate(ps.keys):
                if key not in strategy:
                    raise KeyError(f"profile missing infoset {key}")
                probs = np.asarray(strategy[key], dtype=np.float64)
                self.decision_cum[ps.global_ids[local]] = np.cumsum(probs)

    def walk(self, rng) -> list[str]:
        game = self.game
        node = 0
        tokens = []
        while game.actor[node] != TERMINAL:
            lo = game.edge_ofs[node]
            if game.actor[node] == CHANCE:
                cum = self.chance_cum.get(node)
                if cum is None:
                    cum = np.cumsum(game.chance_probs(node))
                    self.chance_cum[node] = cum
            else:
                cum = self.decision_cum[game.node_infoset[node]]
            pick = int(np.searchsorted(cum, rng.random() * cum[-1],
                                       side="right"))
            pick = min(pick, len(cum) - 1)
            tokens.append(game.labels[game.edge_label[lo + pick]])
            node = game.edge_child[lo + pick]
        tokens.append(_payoff_token(game.u1[node]))
        return tokens


def sample_playthroughs(
    game: GameTree,
    profile: BehavioralProfile,
    n: int,
    seed,
    shards: int = 1,
    include_payoff: bool = True,
) -> Corpus:
    """Sample ``n`` i.i.d. playthroughs of the profile, deterministic in
    ``seed``.

    Lines are produced shard by shard with per-shard generators seeded from
    (seed, shard index), so splitting the work across shards never changes
    the output.  ``include_payoff=False`` strips the trailing payoff token.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    sampler = _Sampler(game, profile)
    lines = []
    base, rem = divmod(n, shards)
    for shard in range(shards):
        count = base + (1 if shard < rem else 0)
        rng = np.random.default_rng(np.random.SeedSequence((seed, shard)))
        for _ in range(count):
            tokens = sampler.walk(rng)
            if not include_payoff:
                tokens = tokens[:-1]
            lines.append(tuple(tokens))
    return Corpus(lines)


def write_corpus(corpus: Corpus, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in corpus.lines:
            fh.write(" ".join(line))
            fh.write("\n")


def read_corpus(path) -> Corpus:
    """Read whitespace-tokenized text, one document per line.

    Tolerant of arbitrary whitespace and CRLF endings; blank lines are
    skipped, and an empty file yields an empty corpus.
    """
    lines = []
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            tokens = tuple(raw.split())
            if tokens:
                lines.append(tokens)
    return Corpus(lines)
