"""End-to-end experiment grids: abstract, solve, lift, measure.

A config (one JSON document) names the game, the bucketing methods, the
k grid (k1 x k2 for Leduc), the seeds, the embedding source for k-means,
and the solver settings.  Every cell runs the same pipeline: build the
abstraction maps, abstract the game, solve the abstraction, lift the
average strategy, and measure its exploitability in the original game,
recording the abstract game's size metrics alongside.

Per-cell randomness derives from a stable hash of (base_seed, method, k1,
k2, seed, domain), so adding grid points never perturbs existing cells, and
cells may run in a thread pool without affecting the (sorted) output.
"""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import abstraction as abst
from .corpus import build_vocab, read_corpus, sample_playthroughs
from .efg import GameTree, size_metrics
from .embeddings import EmbeddingTable, load_embedding_file
from .games import KuhnSpec, LeducSpec, build_kuhn, build_leduc
from .glove import GloveParams, build_cooccurrence, train_glove
from .remote import EmbeddingCache, fetch_embeddings, provider_config
from .results import ExperimentRecord, emit_results
from .solver import exploitability, solve

METHODS = ("kmeans", "random", "hand_bucketing")


@dataclass
class ExperimentConfig:
    game: dict
    methods: list[str]
    k1_grid: list[int]
    seeds: list[int]
    k2_grid: list[int] = field(default_factory=list)
    embeddings: dict = field(default_factory=lambda: {"source": "none"})
    solver: dict = field(default_factory=dict)
    output_dir: str = "results"
    base_seed: int = 0

    def __post_init__(self):
        kind = self.game.get("kind")
        if kind not in ("kuhn", "leduc"):
            raise ValueError(f"unknown game kind {kind!r}")
        unknown = set(self.methods) - set(METHODS)
        if unknown:
            raise ValueError(f"unknown methods {sorted(unknown)}")
        if not self.seeds:
            raise ValueError("seeds must be non-empty")
        if any(k < 1 for k in list(self.k1_grid) + list(self.k2_grid)):
            raise ValueError("k values must be >= 1")
        if kind == "kuhn" and self.k2_grid:
            raise ValueError("Kuhn takes a single k grid (k1_grid only)")
        if kind == "leduc" and not self.k2_grid:
            raise ValueError("Leduc needs both k1_grid and k2_grid")

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        return cls(**json.loads(text))

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))

    def solver_kwargs(self) -> dict:
        out = {"max_iterations": 100_000, "target_eps": 1e-6,
               "variant": "cfr_plus"}
        out.update(self.solver)
        return out


def _cell_seed(base_seed, method, k1, k2, seed, domain_name) -> int:
    digest = hashlib.sha256(
        f"{base_seed}|{method}|{k1}|{k2}|{seed}|{domain_name}".encode()
    ).digest()
    return int.from_bytes(digest[:4], "little")


def build_game(game_spec: dict) -> GameTree:
    if game_spec["kind"] == "kuhn":
        return build_kuhn(KuhnSpec(num_cards=int(game_spec["num_cards"])))
    return build_leduc(LeducSpec(num_ranks=int(game_spec["num_ranks"])))


def game_domains(game_spec: dict) -> list[abst.Domain]:
    if game_spec["kind"] == "kuhn":
        return [abst.kuhn_deal_domain(int(game_spec["num_cards"]))]
    ranks = int(game_spec["num_ranks"])
    return [abst.leduc_preflop_domain(ranks),
            abst.leduc_flop_domain(ranks)]


def resolve_embeddings(
    config: ExperimentConfig, game: GameTree
) -> EmbeddingTable | None:
    """Produce the embedding table named by the config (None for 'none')."""
    spec = config.embeddings
    source = spec.get("source", "none")
    if source == "none":
        return None
    if source == "file":
        return load_embedding_file(spec["path"])
    if source == "train":
        glove_params = GloveParams(**spec.get("glove", {}))
        if spec.get("corpus"):
            corpus = read_corpus(spec["corpus"])
        else:
            profile, _ = solve(game, **config.solver_kwargs())
            corpus = sample_playthroughs(
                game, profile,
                n=int(spec.get("sample_size", 1_000_000)),
                seed=int(spec.get("seed", 0)),
            )
        vocab = build_vocab(corpus, glove_params.min_count)
        cooc = build_cooccurrence(corpus, vocab, glove_params.window_size)
        return train_glove(cooc, glove_params)
    if source == "remote":
        cfg = provider_config(
            spec["provider"],
            model=spec.get("model"),
            **{k: spec[k] for k in ("batch_size", "max_retries", "timeout")
               if k in spec},
        )
        texts = [
            obs for domain in game_domains(config.game)
            for obs in domain.observations
        ]
        cache = (
            EmbeddingCache(spec["cache_dir"]) if spec.get("cache_dir")
            else None
        )
        return fetch_embeddings(cfg, texts, cache=cache)
    raise ValueError(f"unknown embedding source {source!r}")


def _cell_maps(config, domains, k1, k2, method, seed, table):
    ks = (k1, k2) if len(domains) == 2 else (k1,)
    maps = []
    for domain, k in zip(domains, ks):
        cell_seed = _cell_seed(
            config.base_seed, method, k1, k2, seed, domain.name
        )
        if method == "hand_bucketing":
            maps.append(abst.hand_bucket_abstraction(domain, k))
        elif method == "random":
            maps.append(abst.random_abstraction(domain, k, cell_seed))
        elif method == "kmeans":
            if table is None:
                raise ValueError("kmeans requires an embedding source")
            maps.append(
                abst.embed_cluster_abstraction(table, domain, k, cell_seed)
            )
        else:
            raise ValueError(f"unknown method {method!r}")
    return maps


def run_experiment(
    config: ExperimentConfig, workers: int = 1, emit: bool = True
) -> list[ExperimentRecord]:
    """Run every (method, k, seed) cell; returns records sorted by cell.

    With ``emit`` the records and their summary are also written to
    ``<output_dir>/results.csv`` (and ``results_summary.csv``).
    """
    game = build_game(config.game)
    game.sequence_index()  # warm shared caches before any worker pool
    game.utility_matrix()
    domains = game_domains(config.game)
    table = (
        resolve_embeddings(config, game)
        if "kmeans" in config.methods else None
    )
    game_name = game.name
    is_leduc = config.game["kind"] == "leduc"
    cells = []
    for method in config.methods:
        for k1 in config.k1_grid:
            for k2 in (config.k2_grid if is_leduc else [0]):
                for seed in config.seeds:
                    cells.append((method, k1, k2, seed))

    def run_cell(cell):
        method, k1, k2, seed = cell
        try:
            maps = _cell_maps(config, domains, k1, k2, method, seed, table)
            abstracted = abst.abstract_game(game, maps)
            metrics = size_metrics(abstracted)
            profile, _ = solve(abstracted, **config.solver_kwargs())
            lifted = abst.lift_strategy(profile, maps, game)
            eps = exploitability(game, lifted)
            return ExperimentRecord(
                game=game_name, method=method, k1=k1, k2=k2, seed=seed,
                num_sequences=metrics.num_sequences, nnz=metrics.nnz,
                exploitability=eps,
            )
        except Exception as exc:
            raise RuntimeError(f"cell {cell} failed: {exc}") from exc

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(run_cell, cells))
    else:
        records = [run_cell(cell) for cell in cells]
    records.sort(key=lambda r: (r.method, r.k1, r.k2, r.seed))
    if emit:
        emit_results(records, Path(config.output_dir) / "results.csv")
    return records
