"""Embedding tables and their JSON-lines file format.

A table file starts with a header line ``{"dim": d, "provenance": s}``
followed by one ``{"token": ..., "vector": [...]}`` object per line.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np


@dataclass
class EmbeddingTable:
    """token -> d-dimensional vector, with a provenance tag
    (``trained``, ``remote:<model>``, or ``file``)."""

    dimension: int
    vectors: dict[str, np.ndarray] = field(default_factory=dict)
    provenance: str = "trained"

    def __post_init__(self):
        for token, vec in self.vectors.items():
            vec = np.asarray(vec, dtype=np.float64)
            if vec.shape != (self.dimension,):
                raise ValueError(
                    f"vector for {token!r} has length {vec.shape}, "
                    f"expected {self.dimension}"
                )
            if not np.all(np.isfinite(vec)):
                raise ValueError(f"non-finite vector for {token!r}")
            self.vectors[token] = vec

    def __len__(self):
        return len(self.vectors)

    def __contains__(self, token):
        return token in self.vectors

    def __getitem__(self, token) -> np.ndarray:
        return self.vectors[token]

    def tokens(self) -> list[str]:
        return list(self.vectors)

    def subset(self, tokens) -> "EmbeddingTable":
        return EmbeddingTable(
            self.dimension,
            {t: self.vectors[t] for t in tokens},
            self.provenance,
        )

    def matrix(self, tokens) -> np.ndarray:
        return np.stack([self.vectors[t] for t in tokens])


def save_embedding_file(table: EmbeddingTable, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(
            {"dim": table.dimension, "provenance": table.provenance}
        ))
        fh.write("\n")
        for token, vec in table.vectors.items():
            fh.write(json.dumps({"token": token, "vector": vec.tolist()}))
            fh.write("\n")


def load_embedding_file(path) -> EmbeddingTable:
    """Load a table; malformed lines are reported with their line number."""
    with open(path, encoding="utf-8") as fh:
        header_line = fh.readline()
        if not header_line.strip():
            raise ValueError(f"{path}: missing header line")
        try:
            header = json.loads(header_line)
            dim = int(header["dim"])
            provenance = str(header.get("provenance", "file"))
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ValueError(f"{path}: line 1: bad header ({exc})") from exc
        vectors = {}
        for lineno, raw in enumerate(fh, start=2):
            if not raw.strip():
                continue
            try:
                doc = json.loads(raw)
                token = doc["token"]
                vec = np.asarray(doc["vector"], dtype=np.float64)
            except (json.JSONDecodeError, KeyError, TypeError,
                    ValueError) as exc:
                raise ValueError(f"{path}: line {lineno}: {exc}") from exc
            if vec.shape != (dim,):
                raise ValueError(
                    f"{path}: line {lineno}: vector for {token!r} has "
                    f"length {vec.shape[0] if vec.ndim == 1 else vec.shape}, "
                    f"header says {dim}"
                )
            vectors[token] = vec
    return EmbeddingTable(dim, vectors, provenance)
