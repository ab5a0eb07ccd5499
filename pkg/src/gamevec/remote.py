"""Remote embedding providers: batching, retry, and an on-disk cache.

Each provider has a small adapter mapping a batch of texts to a request and
a response back to vectors; adding a provider touches only its adapter.
Tests (and offline use) inject an ``httpx`` transport or use the ``mock``
provider, which derives deterministic vectors from a hash of the text and
never touches the network.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import httpx
import numpy as np

from .embeddings import EmbeddingTable
from .games import RANK_CHARS, SUIT_CHARS, Card, LeducSpec, card_text


class ProviderError(RuntimeError):
    pass


class MissingApiKeyError(ProviderError):
    pass


@dataclass(frozen=True)
class ProviderConfig:
    provider: str  # openai | gemini | mock
    endpoint: str
    model: str
    api_key_env: str
    batch_size: int = 64
    max_retries: int = 3
    timeout: float = 30.0

    def __post_init__(self):
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if not self.model:
            raise ValueError("model identifier must be non-empty")


_DEFAULT_ENDPOINTS = {
    "openai": "https://api.openai.com/v1/embeddings",
    "gemini": (
        "https://generativelanguage.googleapis.com/v1beta/models/"
        "{model}:batchEmbedContents"
    ),
    "mock": "",
}

_DEFAULT_MODELS = {
    "openai": "text-embedding-3-small",
    "gemini": "gemini-embedding-001",
    "mock": "mock-16",
}

_DEFAULT_KEY_ENVS = {
    "openai": "OPENAI_API_KEY",
    "gemini": "GEMINI_API_KEY",
    "mock": "",
}


def provider_config(provider: str, model: str | None = None,
                    **overrides) -> ProviderConfig:
    """Config with the conventional endpoint/model/key-env for a provider."""
    if provider not in _DEFAULT_ENDPOINTS:
        raise ValueError(f"unknown provider {provider!r}")
    return ProviderConfig(
        provider=provider,
        endpoint=overrides.pop("endpoint", _DEFAULT_ENDPOINTS[provider]),
        model=model or _DEFAULT_MODELS[provider],
        api_key_env=overrides.pop("api_key_env", _DEFAULT_KEY_ENVS[provider]),
        **overrides,
    )


# ---------------------------------------------------------------------------
# Provider adapters
# ---------------------------------------------------------------------------


def _openai_request(cfg: ProviderConfig, texts, key):
    return {
        "url": cfg.endpoint,
        "headers": {"Authorization": f"Bearer {key}"},
        "json": {"model": cfg.model, "input": list(texts)},
    }


def _openai_parse(doc) -> list[list[float]]:
    data = sorted(doc["data"], key=lambda item: item["index"])
    return [item["embedding"] for item in data]


def _gemini_request(cfg: ProviderConfig, texts, key):
    url = cfg.endpoint.format(model=cfg.model)
    return {
        "url": url,
        "headers": {"x-goog-api-key": key},
        "json": {
            "requests": [
                {
                    "model": f"models/{cfg.model}",
                    "content": {"parts": [{"text": t}]},
                }
                for t in texts
            ]
        },
    }


def _gemini_parse(doc) -> list[list[float]]:
    return [item["values"] for item in doc["embeddings"]]


_ADAPTERS = {
    "openai": (_openai_request, _openai_parse),
    "gemini": (_gemini_request, _gemini_parse),
}


def _mock_vector(cfg: ProviderConfig, text: str) -> np.ndarray:
    match = re.search(r"(\d+)$", cfg.model)
    dim = int(match.group(1)) if match else 16
    digest = hashlib.sha256(
        f"{cfg.model}\x00{text}".encode()
    ).digest()
    rng = np.random.default_rng(int.from_bytes(digest[:8], "little"))
    return rng.standard_normal(dim)


# ---------------------------------------------------------------------------
# Cache
# ---------------------------------------------------------------------------


class EmbeddingCache:
    """On-disk vector cache keyed by (provider, model, exact text).

    One JSON-lines file per (provider, model); updates rewrite the file via
    a temp file and atomic replace.  Texts are cached byte-exactly, with no
    normalization, because provider embeddings are case and format
    sensitive.
    """

    def __init__(self, directory):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._tables: dict[Path, dict[str, list[float]]] = {}

    def _file(self, provider, model) -> Path:
        safe = re.sub(r"[^A-Za-z0-9._-]", "_", f"{provider}__{model}")
        return self.directory / f"{safe}.jsonl"

    def _load(self, path: Path) -> dict[str, list[float]]:
        table = self._tables.get(path)
        if table is None:
            table = {}
            if path.exists():
                with open(path, encoding="utf-8") as fh:
                    for line in fh:
                        if line.strip():
                            doc = json.loads(line)
                            table[doc["token"]] = doc["vector"]
            self._tables[path] = table
        return table

    def get(self, provider, model, text):
        vec = self._load(self._file(provider, model)).get(text)
        return None if vec is None else np.asarray(vec, dtype=np.float64)

    def update(self, provider, model, entries: dict[str, np.ndarray]):
        path = self._file(provider, model)
        table = self._load(path)
        for text, vec in entries.items():
            table[text] = np.asarray(vec, dtype=np.float64).tolist()
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
                for token, vec in table.items():
                    fh.write(json.dumps({"token": token, "vector": vec}))
                    fh.write("\n")
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


# ---------------------------------------------------------------------------
# Fetch
# ---------------------------------------------------------------------------


def _post_with_retries(client, request, cfg, backoff_base):
    last = None
    for attempt in range(cfg.max_retries):
        try:
            response = client.post(
                request["url"],
                headers=request["headers"],
                json=request["json"],
            )
            if response.status_code == 200:
                return response.json()
            last = ProviderError(
                f"{cfg.provider} returned HTTP {response.status_code}: "
                f"{response.text[:200]}"
            )
        except httpx.HTTPError as exc:
            last = ProviderError(f"{cfg.provider} transport error: {exc}")
        if attempt + 1 < cfg.max_retries:
            time.sleep(backoff_base * (2**attempt))
    raise last


def fetch_embeddings(
    cfg: ProviderConfig,
    texts,
    cache: EmbeddingCache | None = None,
    transport: httpx.BaseTransport | None = None,
    backoff_base: float = 0.5,
    in_flight: int = 1,
) -> EmbeddingTable:
    """Embed ``texts``, deduplicated, via cache then provider.

    Cached entries are served without any network traffic.  Remaining texts
    go out in batches of ``cfg.batch_size`` with exponential-backoff retries;
    up to ``in_flight`` batches run concurrently, and the assembled table is
    independent of completion order.  The API key is read from
    ``cfg.api_key_env`` and is only required when a request is actually
    made.
    """
    unique = list(dict.fromkeys(texts))
    vectors: dict[str, np.ndarray] = {}
    pending = []
    for text in unique:
        hit = cache.get(cfg.provider, cfg.model, text) if cache else None
        if hit is None:
            pending.append(text)
        else:
            vectors[text] = hit

    fetched: dict[str, np.ndarray] = {}
    if pending:
        if cfg.provider == "mock":
            for text in pending:
                fetched[text] = _mock_vector(cfg, text)
        else:
            if cfg.provider not in _ADAPTERS:
                raise ValueError(f"unknown provider {cfg.provider!r}")
            key = os.environ.get(cfg.api_key_env, "")
            if not key:
                raise MissingApiKeyError(
                    f"set {cfg.api_key_env} to call {cfg.provider}"
                )
            make_request, parse = _ADAPTERS[cfg.provider]
            batches = [
                pending[i:i + cfg.batch_size]
                for i in range(0, len(pending), cfg.batch_size)
            ]
            with httpx.Client(
                transport=transport, timeout=cfg.timeout
            ) as client:

                def run(batch):
                    doc = _post_with_retries(
                        client, make_request(cfg, batch, key), cfg,
                        backoff_base,
                    )
                    return parse(doc)

                if in_flight > 1:
                    with ThreadPoolExecutor(max_workers=in_flight) as pool:
                        results = list(pool.map(run, batches))
                else:
                    results = [run(batch) for batch in batches]
            for batch, vecs in zip(batches, results):
                if len(vecs) != len(batch):
                    raise ProviderError(
                        f"{cfg.provider} returned {len(vecs)} vectors for "
                        f"a batch of {len(batch)}"
                    )
                for text, vec in zip(batch, vecs):
                    fetched[text] = np.asarray(vec, dtype=np.float64)
        if cache and fetched:
            cache.update(cfg.provider, cfg.model, fetched)
        vectors.update(fetched)

    if not vectors:
        return EmbeddingTable(0, {}, f"remote:{cfg.model}")
    dims = {len(v) for v in vectors.values()}
    if len(dims) > 1:
        raise ProviderError(f"inconsistent vector dimensions: {sorted(dims)}")
    ordered = {t: vectors[t] for t in unique}
    return EmbeddingTable(dims.pop(), ordered, f"remote:{cfg.model}")


# ---------------------------------------------------------------------------
# Hand-text vocabularies
# ---------------------------------------------------------------------------


def hand_text_vocabulary(kind: str) -> list[str]:
    """Textual observation vocabularies for poker domains.

    ``leduc_preflop``: 26 single-card texts (hearts/spades).
    ``leduc_flop``: 650 ordered (hole, board) two-card texts.
    ``holdem_two_card``: 52*51 ordered two-card texts over all four suits.
    """
    if kind == "leduc_preflop":
        return [card_text(c) for c in LeducSpec(num_ranks=13).deck]
    if kind == "leduc_flop":
        deck = LeducSpec(num_ranks=13).deck
        return [
            card_text(h) + card_text(b)
            for h in deck for b in deck if b != h
        ]
    if kind == "holdem_two_card":
        deck = [Card(r, s) for r in range(len(RANK_CHARS))
                for s in SUIT_CHARS]
        return [
            card_text(a) + card_text(b)
            for a in deck for b in deck if b != a
        ]
    raise ValueError(f"unknown hand-text vocabulary {kind!r}")
