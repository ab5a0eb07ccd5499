"""Command-line entry point.

Subcommands mirror the pipeline stages: ``solve`` a game, ``sample`` a
corpus from a strategy, ``train-embed`` / ``fetch-embed`` to produce
embedding files, ``knn`` / ``pca`` for embedding analysis, ``abstract`` to
build a bucket map, ``evaluate`` one abstraction end to end, and
``experiment`` to run a full grid from a JSON config.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from . import abstraction as abst
from .analysis import knn, pca2
from .corpus import build_vocab, read_corpus, sample_playthroughs, write_corpus
from .efg import size_metrics
from .embeddings import load_embedding_file, save_embedding_file
from .experiment import ExperimentConfig, run_experiment
from .games import KuhnSpec, LeducSpec, build_kuhn, build_leduc
from .glove import GloveParams, build_cooccurrence, train_glove
from .remote import EmbeddingCache, fetch_embeddings, provider_config
from .results import ExperimentRecord, emit_results
from .solver import exploitability, load_strategy, save_strategy, solve


def _game_args(parser):
    parser.add_argument("--game", choices=("kuhn", "leduc"), required=True)
    parser.add_argument("--size", type=int, required=True,
                        help="cards for Kuhn, ranks for Leduc")


def _build(args):
    if args.game == "kuhn":
        return build_kuhn(KuhnSpec(num_cards=args.size))
    return build_leduc(LeducSpec(num_ranks=args.size))


def _solver_args(parser):
    parser.add_argument("--variant", choices=("cfr", "cfr_plus"),
                        default="cfr_plus")
    parser.add_argument("--target-eps", type=float, default=1e-6)
    parser.add_argument("--max-iterations", type=int, default=100_000)


def cmd_solve(args):
    game = _build(args)
    profile, report = solve(
        game, max_iterations=args.max_iterations,
        target_eps=args.target_eps, variant=args.variant,
    )
    save_strategy(profile, args.out)
    print(f"iterations={report.iterations}")
    print(f"exploitability={report.exploitability!r}")
    print(f"wall_time={report.wall_time:.2f}s")
    return 0


def cmd_sample(args):
    game = _build(args)
    profile = load_strategy(args.strategy)
    corpus = sample_playthroughs(
        game, profile, n=args.n, seed=args.seed,
        include_payoff=not args.strip_payoff,
    )
    write_corpus(corpus, args.out)
    print(f"wrote {len(corpus)} playthroughs to {args.out}")
    return 0


def cmd_train_embed(args):
    corpus = read_corpus(args.corpus)
    params = GloveParams(
        vector_size=args.vector_size, max_iter=args.max_iter,
        window_size=args.window_size, x_max=args.x_max, alpha=args.alpha,
        eta=args.eta, seed=args.seed, min_count=args.min_count,
    )
    vocab = build_vocab(corpus, params.min_count)
    cooc = build_cooccurrence(corpus, vocab, params.window_size)
    table = train_glove(cooc, params)
    save_embedding_file(table, args.out)
    print(f"trained {len(table)} vectors of dimension {table.dimension}")
    return 0


def cmd_fetch_embed(args):
    cfg = provider_config(args.provider, model=args.model,
                          batch_size=args.batch_size)
    if args.domain:
        texts = list(abst.domain_for(args.domain).observations)
    else:
        texts = [line.strip() for line in
                 Path(args.texts).read_text(encoding="utf-8").splitlines()
                 if line.strip()]
    cache = EmbeddingCache(args.cache_dir) if args.cache_dir else None
    table = fetch_embeddings(cfg, texts, cache=cache)
    save_embedding_file(table, args.out)
    print(f"fetched {len(table)} vectors of dimension {table.dimension}")
    return 0


def cmd_knn(args):
    table = load_embedding_file(args.embeddings)
    result = knn(table, args.query, args.k, metric=args.metric)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["token", "distance"])
    for token, dist in result.neighbors:
        writer.writerow([token, repr(dist)])
    return 0


def cmd_pca(args):
    table = load_embedding_file(args.embeddings)
    subset = None
    if args.tokens:
        subset = [line.strip() for line in
                  Path(args.tokens).read_text(encoding="utf-8").splitlines()
                  if line.strip()]
    projection = pca2(table, subset)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["token", "x", "y"])
        for token, (x, y) in projection.coords.items():
            writer.writerow([token, repr(x), repr(y)])
    ev1, ev2 = projection.explained_variance
    print(f"explained variance: {ev1:.4f}, {ev2:.4f}")
    return 0


def cmd_abstract(args):
    domain = abst.domain_for(args.domain)
    if args.method == "hand_bucketing":
        amap = abst.hand_bucket_abstraction(domain, args.k)
    elif args.method == "random":
        amap = abst.random_abstraction(domain, args.k, args.seed)
    elif args.method == "identity":
        amap = abst.identity_abstraction(domain)
    else:
        table = load_embedding_file(args.embeddings)
        amap = abst.embed_cluster_abstraction(table, domain, args.k,
                                              args.seed)
    amap.save(args.out)
    print(f"method={amap.method} k={amap.k} "
          f"non_empty_buckets={amap.non_empty_buckets}")
    return 0


def cmd_evaluate(args):
    game = _build(args)
    maps = [abst.AbstractionMap.load(path) for path in args.map]
    abstracted = abst.abstract_game(game, maps)
    metrics = size_metrics(abstracted)
    profile, report = solve(
        abstracted, max_iterations=args.max_iterations,
        target_eps=args.target_eps, variant=args.variant,
    )
    lifted = abst.lift_strategy(profile, maps, game)
    eps = exploitability(game, lifted)
    record = ExperimentRecord(
        game=game.name, method=maps[0].method,
        k1=maps[0].k, k2=maps[1].k if len(maps) > 1 else 0,
        seed=maps[0].seed if maps[0].seed is not None else 0,
        num_sequences=metrics.num_sequences, nnz=metrics.nnz,
        exploitability=eps,
    )
    if args.out:
        emit_results([record], args.out)
    print(f"num_sequences={metrics.num_sequences}")
    print(f"nnz={metrics.nnz}")
    print(f"abstract_exploitability={report.exploitability!r}")
    print(f"lifted_exploitability={eps!r}")
    return 0


def cmd_experiment(args):
    config = ExperimentConfig.load(args.config)
    records = run_experiment(config, workers=args.workers)
    print(f"wrote {len(records)} records to "
          f"{Path(config.output_dir) / 'results.csv'}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gamevec",
        description="Game abstraction via action embeddings",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a game, write the strategy")
    _game_args(p)
    _solver_args(p)
    p.add_argument("--out", required=True, help=".json or .json.gz")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sample", help="sample playthroughs from a strategy")
    _game_args(p)
    p.add_argument("--strategy", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strip-payoff", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("train-embed", help="train embeddings on a corpus")
    p.add_argument("--corpus", required=True)
    defaults = GloveParams()
    p.add_argument("--vector-size", type=int, default=defaults.vector_size)
    p.add_argument("--max-iter", type=int, default=defaults.max_iter)
    p.add_argument("--window-size", type=int, default=defaults.window_size)
    p.add_argument("--x-max", type=float, default=defaults.x_max)
    p.add_argument("--alpha", type=float, default=defaults.alpha)
    p.add_argument("--eta", type=float, default=defaults.eta)
    p.add_argument("--seed", type=int, default=defaults.seed)
    p.add_argument("--min-count", type=int, default=defaults.min_count)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train_embed)

    p = sub.add_parser("fetch-embed",
                       help="fetch embeddings from a provider")
    p.add_argument("--provider", choices=("openai", "gemini", "mock"),
                   required=True)
    p.add_argument("--model", default=None)
    p.add_argument("--batch-size", type=int, default=64)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--domain",
                       help="kuhn:<n> | leduc-preflop:<r> | leduc-flop:<r>")
    group.add_argument("--texts", help="file with one text per line")
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fetch_embed)

    p = sub.add_parser("knn", help="nearest neighbors of a token")
    p.add_argument("--embeddings", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--k", type=int, default=7)
    p.add_argument("--metric", choices=("euclidean", "cosine"),
                   default="euclidean")
    p.set_defaults(func=cmd_knn)

    p = sub.add_parser("pca", help="2-D principal-component projection")
    p.add_argument("--embeddings", required=True)
    p.add_argument("--tokens", default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_pca)

    p = sub.add_parser("abstract", help="build an abstraction map")
    p.add_argument("--domain", required=True,
                   help="kuhn:<n> | leduc-preflop:<r> | leduc-flop:<r>")
    p.add_argument("--method",
                   choices=("kmeans", "random", "hand_bucketing", "identity"),
                   required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--embeddings", default=None,
                   help="embedding file (kmeans only)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_abstract)

    p = sub.add_parser("evaluate",
                       help="abstract, solve, lift, measure one cell")
    _game_args(p)
    _solver_args(p)
    p.add_argument("--map", action="append", required=True,
                   help="abstraction map file (repeat for Leduc rounds)")
    p.add_argument("--out", default=None, help="optional record CSV")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("experiment", help="run a grid from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # CLI boundary: errors become diagnostics
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
