import json

import httpx
import numpy as np
import pytest

from gamevec import (
    EmbeddingCache,
    EmbeddingTable,
    MissingApiKeyError,
    ProviderError,
    fetch_embeddings,
    hand_text_vocabulary,
    load_embedding_file,
    provider_config,
    save_embedding_file,
)


def constant_vector_transport(dim=4, counter=None):
    """Transport answering every text with the same vector, per provider
    schema."""

    def handler(request: httpx.Request) -> httpx.Response:
        if counter is not None:
            counter.append(request)
        body = json.loads(request.content)
        if "input" in body:  # openai schema
            data = [
                {"index": i, "embedding": [1.0] * dim}
                for i in range(len(body["input"]))
            ]
            return httpx.Response(200, json={"data": data})
        data = [{"values": [1.0] * dim} for _ in body["requests"]]
        return httpx.Response(200, json={"embeddings": data})

    return httpx.MockTransport(handler)


def failing_transport(fail_times, dim=3):
    calls = {"n": 0}

    def handler(request: httpx.Request) -> httpx.Response:
        calls["n"] += 1
        if calls["n"] <= fail_times:
            return httpx.Response(500, text="boom")
        body = json.loads(request.content)
        data = [
            {"index": i, "embedding": [2.0] * dim}
            for i in range(len(body["input"]))
        ]
        return httpx.Response(200, json={"data": data})

    return httpx.MockTransport(handler), calls


@pytest.fixture
def openai_cfg(monkeypatch):
    monkeypatch.setenv("OPENAI_API_KEY", "test-key")
    return provider_config("openai")


class TestFetch:
    def test_empty_texts(self, openai_cfg):
        table = fetch_embeddings(openai_cfg, [],
                                 transport=constant_vector_transport())
        assert len(table) == 0

    def test_deduplication(self, openai_cfg):
        table = fetch_embeddings(
            openai_cfg, ["As", "As", "Kh"],
            transport=constant_vector_transport(),
        )
        assert len(table) == 2
        assert set(table.tokens()) == {"As", "Kh"}

    def test_mock_round_trip(self, openai_cfg):
        table = fetch_embeddings(
            openai_cfg, ["x", "y"], transport=constant_vector_transport(dim=5)
        )
        for token in ("x", "y"):
            assert np.array_equal(table[token], np.ones(5))
        assert table.provenance == "remote:text-embedding-3-small"

    def test_gemini_schema(self, monkeypatch):
        monkeypatch.setenv("GEMINI_API_KEY", "k")
        cfg = provider_config("gemini")
        table = fetch_embeddings(
            cfg, ["a", "b"], transport=constant_vector_transport(dim=6)
        )
        assert table.dimension == 6

    def test_batching(self, openai_cfg, monkeypatch):
        requests = []
        cfg = provider_config("openai", batch_size=2)
        monkeypatch.setenv("OPENAI_API_KEY", "k")
        fetch_embeddings(
            cfg, [f"t{i}" for i in range(5)],
            transport=constant_vector_transport(counter=requests),
        )
        sizes = [len(json.loads(r.content)["input"]) for r in requests]
        assert sizes == [2, 2, 1]

    def test_retry_then_success(self, monkeypatch):
        monkeypatch.setenv("OPENAI_API_KEY", "k")
        cfg = provider_config("openai", max_retries=3)
        transport, calls = failing_transport(fail_times=2)
        table = fetch_embeddings(cfg, ["q"], transport=transport,
                                 backoff_base=0.001)
        assert calls["n"] == 3
        assert np.array_equal(table["q"], 2.0 * np.ones(3))

    def test_retries_exhausted(self, monkeypatch):
        monkeypatch.setenv("OPENAI_API_KEY", "k")
        cfg = provider_config("openai", max_retries=2)
        transport, _ = failing_transport(fail_times=10)
        with pytest.raises(ProviderError, match="500"):
            fetch_embeddings(cfg, ["q"], transport=transport,
                             backoff_base=0.001)

    def test_missing_api_key(self, monkeypatch):
        monkeypatch.delenv("OPENAI_API_KEY", raising=False)
        cfg = provider_config("openai")
        with pytest.raises(MissingApiKeyError):
            fetch_embeddings(cfg, ["q"],
                             transport=constant_vector_transport())

    def test_mock_provider_is_offline_and_deterministic(self):
        cfg = provider_config("mock", model="mock-8")
        a = fetch_embeddings(cfg, ["As", "Kh"])
        b = fetch_embeddings(cfg, ["As", "Kh"])
        assert a.dimension == 8
        for token in a.tokens():
            assert np.array_equal(a[token], b[token])
        assert not np.array_equal(a["As"], a["Kh"])


class TestCache:
    def test_warm_cache_makes_no_network_calls(self, openai_cfg, tmp_path):
        cache = EmbeddingCache(tmp_path / "cache")
        fetch_embeddings(openai_cfg, ["a", "b"], cache=cache,
                         transport=constant_vector_transport())

        def refuse(request):
            raise AssertionError("network call with warm cache")

        table = fetch_embeddings(
            openai_cfg, ["b", "a"], cache=cache,
            transport=httpx.MockTransport(refuse),
        )
        assert len(table) == 2

    def test_cache_persists_across_instances(self, openai_cfg, tmp_path):
        cache_dir = tmp_path / "cache"
        fetch_embeddings(openai_cfg, ["a"], cache=EmbeddingCache(cache_dir),
                         transport=constant_vector_transport())
        reopened = EmbeddingCache(cache_dir)
        assert reopened.get("openai", "text-embedding-3-small", "a") is not None

    def test_completion_order_independence(self, openai_cfg, tmp_path):
        cfg = provider_config("openai", batch_size=1)
        table = fetch_embeddings(
            cfg, [f"t{i}" for i in range(6)],
            cache=EmbeddingCache(tmp_path / "c"),
            transport=constant_vector_transport(),
            in_flight=4,
        )
        assert table.tokens() == [f"t{i}" for i in range(6)]


class TestHandTextVocabulary:
    def test_leduc_preflop(self):
        vocab = hand_text_vocabulary("leduc_preflop")
        assert len(vocab) == 26
        assert "As" in vocab and "2h" in vocab

    def test_leduc_flop(self):
        vocab = hand_text_vocabulary("leduc_flop")
        assert len(vocab) == 650
        assert "AsAs" not in vocab
        assert "AsAh" in vocab

    def test_holdem(self):
        vocab = hand_text_vocabulary("holdem_two_card")
        assert len(vocab) == 52 * 51
        assert "AsAh" in vocab and "2c7d" in vocab

    def test_unknown(self):
        with pytest.raises(ValueError):
            hand_text_vocabulary("omaha")


class TestEmbeddingFiles:
    def test_round_trip(self, tmp_path):
        table = EmbeddingTable(
            3,
            {"a": np.array([1.0, 2.0, 3.0]), "b": np.array([0.0, -1.0, 0.5])},
            provenance="remote:test",
        )
        path = tmp_path / "emb.jsonl"
        save_embedding_file(table, path)
        loaded = load_embedding_file(path)
        assert loaded.dimension == 3
        assert loaded.provenance == "remote:test"
        for token in table.tokens():
            assert np.array_equal(loaded[token], table[token])

    def test_dimension_mismatch_names_token(self, tmp_path):
        path = tmp_path / "bad.jsonl"
        path.write_text(
            '{"dim": 50, "provenance": "file"}\n'
            '{"token": "oops", "vector": ' + json.dumps([0.0] * 49) + "}\n",
            encoding="utf-8",
        )
        with pytest.raises(ValueError, match="oops"):
            load_embedding_file(path)

    def test_malformed_line_number(self, tmp_path):
        path = tmp_path / "bad.jsonl"
        path.write_text(
            '{"dim": 2, "provenance": "file"}\n'
            '{"token": "x", "vector": [0.0, 1.0]}\n'
            "not json\n",
            encoding="utf-8",
        )
        with pytest.raises(ValueError, match="line 3"):
            load_embedding_file(path)

    def test_empty_table(self, tmp_path):
        path = tmp_path / "empty.jsonl"
        save_embedding_file(EmbeddingTable(4, {}, "file"), path)
        loaded = load_embedding_file(path)
        assert len(loaded) == 0
        assert loaded.dimension == 4
