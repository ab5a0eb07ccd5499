"""Game abstraction via action embeddings.

Solve two-player zero-sum benchmark games, generate action-token corpora
from self-play, train or fetch action embeddings, cluster observations into
buckets, abstract and re-solve the game, and measure the exploitability of
the lifted strategy in the original game.
"""

from .efg import (
    CHANCE,
    PLAYER1,
    PLAYER2,
    TERMINAL,
    GameStructureError,
    GameTree,
    SequenceIndex,
    SizeMetrics,
    SparseUtilityMatrix,
    build_utility_matrix,
    chance,
    decision,
    expected_utility,
    index_sequences,
    infoset_key,
    size_metrics,
    terminal,
    validate_game,
)
from .games import (
    Card,
    KuhnSpec,
    LeducSpec,
    build_kuhn,
    build_leduc,
    card_text,
    kuhn_deal_token,
    strength_order,
)
from .solver import (
    BehavioralProfile,
    SolveReport,
    best_response,
    exploitability,
    game_value,
    load_strategy,
    save_strategy,
    solve,
    uniform_profile,
)
from .cluster import ClusterResult, hand_bucketing, kmeans, random_assignment
from .abstraction import (
    AbstractionMap,
    Domain,
    abstract_game,
    domain_for,
    embed_cluster_abstraction,
    hand_bucket_abstraction,
    identity_abstraction,
    kuhn_deal_domain,
    leduc_flop_domain,
    leduc_preflop_domain,
    lift_strategy,
    random_abstraction,
)
from .corpus import (
    Corpus,
    Vocabulary,
    build_vocab,
    read_corpus,
    sample_playthroughs,
    write_corpus,
)
from .embeddings import EmbeddingTable, load_embedding_file, save_embedding_file
from .glove import (
    CoocTable,
    GloveModel,
    GloveParams,
    TrainingDiverged,
    build_cooccurrence,
    fit_glove,
    glove_loss,
    train_glove,
)
from .remote import (
    EmbeddingCache,
    MissingApiKeyError,
    ProviderConfig,
    ProviderError,
    fetch_embeddings,
    hand_text_vocabulary,
    provider_config,
)
from .analysis import NeighborList, Projection2D, knn, pca2
from .results import (
    ExperimentRecord,
    emit_results,
    read_results,
    summarize,
)
from .experiment import ExperimentConfig, run_experiment

__all__ = [name for name in dir() if not name.startswith("_")]
