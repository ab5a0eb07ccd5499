"""Fetch embeddings for poker hand texts from an embedding provider.

Hands are encoded as plain card text ("As" = Ace of spades, "AsKh" = Ace of
spades with the King of hearts on the board).  This demo uses the offline
``mock`` provider so it runs without credentials; switch the config to
``openai`` or ``gemini`` (and export the matching API key) for real
vectors.  The on-disk cache means repeated runs never refetch a text.
"""

import tempfile

from gamevec import (
    EmbeddingCache,
    fetch_embeddings,
    hand_text_vocabulary,
    knn,
    provider_config,
)

# 26 Leduc hole cards and all 650 (hole, board) pairs.
preflop = hand_text_vocabulary("leduc_preflop")
flop = hand_text_vocabulary("leduc_flop")
print(f"{len(preflop)} preflop texts, e.g. {preflop[:4]}")
print(f"{len(flop)} flop texts, e.g. {flop[:4]}")

cfg = provider_config("mock", model="mock-32")
# For live providers instead:
#   cfg = provider_config("openai")            # text-embedding-3-small
#   cfg = provider_config("gemini")            # gemini-embedding-001
# and export OPENAI_API_KEY / GEMINI_API_KEY.

with tempfile.TemporaryDirectory() as tmp:
    cache = EmbeddingCache(tmp)
    table = fetch_embeddings(cfg, preflop + flop, cache=cache)
    print(f"\nfetched {len(table)} vectors of dimension {table.dimension} "
          f"({table.provenance})")

    # Second fetch is served entirely from the cache.
    again = fetch_embeddings(cfg, preflop, cache=cache)
    print(f"cache warm: re-fetching {len(again)} texts touches no network")

    # Nearest neighbors of a pair of aces among all flop texts (mock
    # vectors are hash noise, so these are arbitrary; with a live provider
    # they become other ace-high holdings).
    neighbors = knn(table.subset(flop), "AsAh", 5, metric="cosine")
    print("\n5-NN of AsAh:", ", ".join(neighbors.tokens()))
