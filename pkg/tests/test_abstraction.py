import numpy as np
import pytest

from gamevec import (
    AbstractionMap,
    Domain,
    EmbeddingTable,
    KuhnSpec,
    abstract_game,
    build_kuhn,
    embed_cluster_abstraction,
    exploitability,
    hand_bucket_abstraction,
    identity_abstraction,
    kuhn_deal_domain,
    leduc_flop_domain,
    leduc_preflop_domain,
    lift_strategy,
    random_abstraction,
    size_metrics,
    solve,
    validate_game,
)


@pytest.fixture(scope="module")
def kuhn8():
    return build_kuhn(KuhnSpec(num_cards=8))


@pytest.fixture(scope="module")
def kuhn8_domain():
    return kuhn_deal_domain(8)


def leduc3_domains():
    return [leduc_preflop_domain(3), leduc_flop_domain(3)]


class TestDomains:
    def test_kuhn_domain(self):
        domain = kuhn_deal_domain(256)
        assert len(domain) == 512
        assert "0?" in domain.observations
        assert "?255" in domain.observations

    def test_leduc_domains(self):
        assert len(leduc_preflop_domain(13)) == 26
        assert len(leduc_flop_domain(13)) == 650


class TestMapBuilders:
    def test_identity(self, kuhn8_domain):
        amap = identity_abstraction(kuhn8_domain)
        assert amap.non_empty_buckets == 16

    def test_random_k1_equals_hand_k1(self, kuhn8_domain):
        random_map = random_abstraction(kuhn8_domain, 1, seed=9)
        hand_map = hand_bucket_abstraction(kuhn8_domain, 1)
        assert random_map.assignment == hand_map.assignment

    def test_hand_bucketing_shared_across_players(self, kuhn8_domain):
        amap = hand_bucket_abstraction(kuhn8_domain, 4)
        for card in range(8):
            assert amap.bucket(f"{card}?") == amap.bucket(f"?{card}")

    def test_embed_cluster_missing_tokens(self, kuhn8_domain):
        table = EmbeddingTable(3, {"0?": np.zeros(3)})
        with pytest.raises(KeyError, match="missing"):
            embed_cluster_abstraction(table, kuhn8_domain, 2, seed=0)

    def test_embed_cluster_lossless_on_distinct_vectors(self, kuhn8_domain):
        rng = np.random.default_rng(3)
        table = EmbeddingTable(
            4, {o: rng.normal(size=4) for o in kuhn8_domain.observations}
        )
        amap = embed_cluster_abstraction(table, kuhn8_domain, 16, seed=1)
        assert amap.non_empty_buckets == 16

    def test_embed_cluster_k_beyond_domain_saturates(self, kuhn8_domain):
        rng = np.random.default_rng(4)
        table = EmbeddingTable(
            4, {o: rng.normal(size=4) for o in kuhn8_domain.observations}
        )
        amap = embed_cluster_abstraction(table, kuhn8_domain, 1024, seed=1)
        assert amap.k == 1024
        assert amap.non_empty_buckets == 16  # one per observation

    def test_flop_buckets_follow_board(self):
        amap = hand_bucket_abstraction(leduc_flop_domain(3), 3)
        # Pairs sharing a board card share a bucket regardless of hole.
        assert amap.bucket("2h4s") == amap.bucket("3h4s")

    def test_json_round_trip(self, kuhn8_domain, tmp_path):
        amap = random_abstraction(kuhn8_domain, 4, seed=7)
        path = tmp_path / "map.json"
        amap.save(path)
        loaded = AbstractionMap.load(path)
        assert loaded.assignment == amap.assignment
        assert loaded.method == amap.method
        assert loaded.k == amap.k
        assert loaded.seed == amap.seed


class TestAbstractGame:
    def test_identity_preserves_metrics(self, kuhn8, kuhn8_domain):
        amap = identity_abstraction(kuhn8_domain)
        assert size_metrics(abstract_game(kuhn8, amap)) == size_metrics(kuhn8)

    def test_k1_collapses_infosets(self, kuhn8, kuhn8_domain):
        abstracted = abstract_game(
            kuhn8, hand_bucket_abstraction(kuhn8_domain, 1)
        )
        for player in (0, 1):
            keys = [
                inf for inf in abstracted.infosets if inf.player == player
            ]
            assert len(keys) == 2

    def test_hand_k2_sequence_dimension(self, kuhn8, kuhn8_domain):
        abstracted = abstract_game(
            kuhn8, hand_bucket_abstraction(kuhn8_domain, 2)
        )
        index = abstracted.sequence_index()
        assert index.row.dimension == 9  # 2 buckets x 2 decisions x 2 + empty
        assert index.col.dimension == 9

    def test_abstracted_games_validate(self, kuhn8, kuhn8_domain, leduc3):
        for k in (1, 2, 4):
            ag = abstract_game(kuhn8, hand_bucket_abstraction(kuhn8_domain, k))
            assert validate_game(ag) == []
        maps = [hand_bucket_abstraction(d, 2) for d in leduc3_domains()]
        assert validate_game(abstract_game(leduc3, maps)) == []

    def test_metrics_shrink(self, kuhn8, kuhn8_domain, leduc3):
        original = size_metrics(kuhn8)
        for k in (1, 2, 4):
            ag = abstract_game(kuhn8, hand_bucket_abstraction(kuhn8_domain, k))
            assert size_metrics(ag) <= original
        maps = [hand_bucket_abstraction(d, 1) for d in leduc3_domains()]
        assert size_metrics(abstract_game(leduc3, maps)) <= size_metrics(leduc3)

    def test_refinement_monotonicity(self, kuhn8, kuhn8_domain):
        # k=4 buckets refine k=2 buckets (contiguous halving).
        coarse = size_metrics(
            abstract_game(kuhn8, hand_bucket_abstraction(kuhn8_domain, 2))
        )
        fine = size_metrics(
            abstract_game(kuhn8, hand_bucket_abstraction(kuhn8_domain, 4))
        )
        assert coarse.num_sequences <= fine.num_sequences
        assert coarse.nnz <= fine.nnz

    def test_empty_buckets_leave_metrics_unchanged(self, kuhn8, kuhn8_domain):
        # A map requesting k=5 with only buckets {0, 4} occupied matches the
        # dense 2-bucket map built from the same split.
        split = {o: (0 if o.strip("?").isdigit() and
                     int(o.strip("?")) < 4 else 4)
                 for o in kuhn8_domain.observations}
        sparse_map = AbstractionMap(kuhn8_domain, split, k=5, method="random",
                                    seed=0)
        dense_map = AbstractionMap(
            kuhn8_domain,
            {o: (0 if b == 0 else 1) for o, b in split.items()},
            k=2, method="random", seed=0,
        )
        assert sparse_map.non_empty_buckets == 2
        m_sparse = size_metrics(abstract_game(kuhn8, sparse_map))
        m_dense = size_metrics(abstract_game(kuhn8, dense_map))
        assert m_sparse == m_dense

    def test_idempotent_under_identity(self, kuhn8, kuhn8_domain):
        once = abstract_game(kuhn8, hand_bucket_abstraction(kuhn8_domain, 2))
        # Identity map over the abstracted observations, numbered so that
        # relabeling maps every bucket label to itself.
        tokens = sorted(
            {o for inf in once.infosets for o in inf.obs}, key=int
        )
        ident = AbstractionMap(
            domain=Domain("derived", tuple(tokens)),
            assignment={t: int(t) for t in tokens},
            k=len(tokens), method="hand_bucketing",
        )
        twice = abstract_game(once, ident)
        assert [inf.key for inf in twice.infosets] == [
            inf.key for inf in once.infosets
        ]
        assert np.array_equal(twice.node_infoset, once.node_infoset)

    def test_uncovered_observation(self, kuhn8, kuhn8_domain):
        amap = hand_bucket_abstraction(kuhn_deal_domain(4), 2)
        with pytest.raises(KeyError, match="not covered"):
            abstract_game(kuhn8, amap)


class TestLift:
    def test_identity_lift_is_identity(self, kuhn8, kuhn8_domain):
        amap = identity_abstraction(kuhn8_domain)
        abstracted = abstract_game(kuhn8, amap)
        profile, report = solve(abstracted, max_iterations=2000,
                                target_eps=1e-6)
        lifted = lift_strategy(profile, amap, kuhn8)
        eps = exploitability(kuhn8, lifted)
        assert abs(eps - report.exploitability) < 1e-12

    def test_lossless_matches_direct_solve(self, kuhn8, kuhn8_domain):
        amap = identity_abstraction(kuhn8_domain)
        abstracted = abstract_game(kuhn8, amap)
        profile, _ = solve(abstracted, max_iterations=5000, target_eps=1e-6)
        lifted = lift_strategy(profile, amap, kuhn8)
        _, direct = solve(kuhn8, max_iterations=5000, target_eps=1e-6)
        assert exploitability(kuhn8, lifted) <= 2 * max(
            direct.exploitability, 1e-6
        )

    def test_missing_image_infoset(self, kuhn8, kuhn8_domain):
        amap = hand_bucket_abstraction(kuhn8_domain, 2)
        abstracted = abstract_game(kuhn8, amap)
        profile, _ = solve(abstracted, max_iterations=100, target_eps=0.0)
        broken = (dict(profile.for_player(0)), dict(profile.for_player(1)))
        broken[0].pop(next(iter(broken[0])))
        from gamevec import BehavioralProfile

        with pytest.raises(KeyError, match="image"):
            lift_strategy(BehavioralProfile(broken), amap, kuhn8)
