import json

from gamevec.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_kv(out):
    pairs = {}
    for line in out.strip().splitlines():
        if "=" in line:
            key, _, value = line.partition("=")
            pairs[key] = value
    return pairs


class TestSolveEvaluate:
    def test_solve_then_identity_evaluate(self, capsys, tmp_path):
        strategy = tmp_path / "kuhn3.json"
        code, out, err = run_cli(
            capsys, "solve", "--game", "kuhn", "--size", "3",
            "--target-eps", "1e-6", "--max-iterations", "20000",
            "--out", str(strategy),
        )
        assert code == 0, err
        solve_eps = float(parse_kv(out)["exploitability"])
        assert strategy.exists()

        map_path = tmp_path / "identity.json"
        code, out, err = run_cli(
            capsys, "abstract", "--domain", "kuhn:3", "--method", "identity",
            "--out", str(map_path),
        )
        assert code == 0, err

        code, out, err = run_cli(
            capsys, "evaluate", "--game", "kuhn", "--size", "3",
            "--target-eps", "1e-6", "--max-iterations", "20000",
            "--map", str(map_path),
        )
        assert code == 0, err
        lifted = float(parse_kv(out)["lifted_exploitability"])
        assert abs(lifted - solve_eps) < 1e-12

    def test_leduc_evaluate_with_two_maps(self, capsys, tmp_path):
        pre_map = tmp_path / "pre.json"
        flop_map = tmp_path / "flop.json"
        for domain, path in (("leduc-preflop:3", pre_map),
                             ("leduc-flop:3", flop_map)):
            code, out, err = run_cli(
                capsys, "abstract", "--domain", domain,
                "--method", "hand_bucketing", "--k", "6", "--out", str(path),
            )
            assert code == 0, err
        code, out, err = run_cli(
            capsys, "evaluate", "--game", "leduc", "--size", "3",
            "--target-eps", "1e-4", "--map", str(pre_map),
            "--map", str(flop_map),
        )
        assert code == 0, err
        # Six buckets over six cards per round: lossless, so the lifted
        # strategy is as good as the abstract solve.
        values = parse_kv(out)
        assert float(values["lifted_exploitability"]) <= 2e-4

    def test_solve_rejects_bad_game(self, capsys, tmp_path):
        code, out, err = run_cli(
            capsys, "solve", "--game", "kuhn", "--size", "1",
            "--out", str(tmp_path / "x.json"),
        )
        assert code == 1
        assert "error:" in err


class TestSampleTrainKnnPca:
    def test_pipeline(self, capsys, tmp_path):
        strategy = tmp_path / "s.json.gz"
        code, *_ = run_cli(
            capsys, "solve", "--game", "kuhn", "--size", "8",
            "--target-eps", "1e-4", "--out", str(strategy),
        )
        assert code == 0

        corpus = tmp_path / "corpus.txt"
        code, out, err = run_cli(
            capsys, "sample", "--game", "kuhn", "--size", "8",
            "--strategy", str(strategy), "--n", "4000", "--seed", "0",
            "--out", str(corpus),
        )
        assert code == 0, err
        assert len(corpus.read_text().splitlines()) == 4000

        emb = tmp_path / "emb.jsonl"
        code, out, err = run_cli(
            capsys, "train-embed", "--corpus", str(corpus),
            "--vector-size", "8", "--max-iter", "5", "--min-count", "5",
            "--out", str(emb),
        )
        assert code == 0, err

        code, out, err = run_cli(
            capsys, "knn", "--embeddings", str(emb), "--query", "0?",
            "--k", "3",
        )
        assert code == 0, err
        assert out.splitlines()[0] == "token,distance"
        assert len(out.strip().splitlines()) == 4

        proj = tmp_path / "proj.csv"
        code, out, err = run_cli(
            capsys, "pca", "--embeddings", str(emb), "--out", str(proj),
        )
        assert code == 0, err
        assert proj.read_text().splitlines()[0] == "token,x,y"

    def test_fetch_embed_mock_feeds_abstract(self, capsys, tmp_path):
        emb = tmp_path / "mock.jsonl"
        code, out, err = run_cli(
            capsys, "fetch-embed", "--provider", "mock",
            "--model", "mock-8", "--domain", "kuhn:8", "--out", str(emb),
        )
        assert code == 0, err

        map_path = tmp_path / "map.json"
        code, out, err = run_cli(
            capsys, "abstract", "--domain", "kuhn:8", "--method", "kmeans",
            "--k", "4", "--seed", "0", "--embeddings", str(emb),
            "--out", str(map_path),
        )
        assert code == 0, err
        doc = json.loads(map_path.read_text())
        assert doc["method"] == "kmeans"
        assert len(doc["assignment"]) == 16


class TestExperimentCommand:
    def test_run_twice_byte_identical(self, capsys, tmp_path):
        config = {
            "game": {"kind": "kuhn", "num_cards": 8},
            "methods": ["random", "hand_bucketing"],
            "k1_grid": [1, 2],
            "seeds": [0],
            "solver": {"max_iterations": 2000, "target_eps": 1e-4},
            "output_dir": str(tmp_path / "out"),
        }
        config_path = tmp_path / "config.json"
        config_path.write_text(json.dumps(config), encoding="utf-8")
        code, out, err = run_cli(
            capsys, "experiment", "--config", str(config_path)
        )
        assert code == 0, err
        first = (tmp_path / "out" / "results.csv").read_bytes()
        code, *_ = run_cli(
            capsys, "experiment", "--config", str(config_path)
        )
        assert code == 0
        assert (tmp_path / "out" / "results.csv").read_bytes() == first
