import numpy as np
import pytest

from gamevec import hand_bucketing, kmeans, random_assignment


class TestKmeans:
    def test_k1_inertia_is_total_deviation(self):
        rng = np.random.default_rng(0)
        points = rng.normal(size=(40, 3))
        result = kmeans(points, 1, seed=0)
        assert np.all(result.assignments == 0)
        expected = np.sum((points - points.mean(axis=0)) ** 2)
        assert abs(result.inertia - expected) < 1e-9

    def test_k_equals_distinct_points(self):
        rng = np.random.default_rng(1)
        points = rng.normal(size=(12, 4))
        result = kmeans(points, 12, seed=3)
        assert result.inertia == 0.0
        assert len(set(result.assignments.tolist())) == 12

    def test_separated_blobs_recovered(self):
        rng = np.random.default_rng(7)
        a = rng.normal(size=(50, 5))
        b = rng.normal(size=(50, 5)) + 100.0
        points = np.vstack([a, b])
        result = kmeans(points, 2, seed=11)
        first, second = result.assignments[:50], result.assignments[50:]
        assert len(set(first.tolist())) == 1
        assert len(set(second.tolist())) == 1
        assert first[0] != second[0]

    def test_seed_determinism(self):
        rng = np.random.default_rng(2)
        points = rng.normal(size=(30, 6))
        r1 = kmeans(points, 5, seed=42)
        r2 = kmeans(points, 5, seed=42)
        assert np.array_equal(r1.assignments, r2.assignments)
        assert np.array_equal(r1.centroids, r2.centroids)
        assert r1.inertia == r2.inertia

    def test_inertia_non_increasing_per_iteration(self):
        rng = np.random.default_rng(9)
        points = rng.normal(size=(60, 2))
        previous = np.inf
        for iters in range(1, 12):
            result = kmeans(points, 4, seed=5, max_iter=iters)
            assert result.inertia <= previous
            previous = result.inertia

    def test_empty_clusters_retained(self):
        # Three identical points, k=3: two centroids end up empty but the
        # result still reports k centroids.
        points = np.zeros((3, 2))
        points[1] = [10.0, 0.0]
        result = kmeans(points, 2, seed=0)
        assert result.centroids.shape == (2, 2)

    def test_single_point(self):
        result = kmeans(np.array([[2.0, 3.0]]), 1, seed=0)
        assert result.assignments.tolist() == [0]
        assert result.inertia == 0.0

    def test_errors(self):
        points = np.zeros((3, 2))
        with pytest.raises(ValueError):
            kmeans(points, 4, seed=0)
        with pytest.raises(ValueError):
            kmeans(points, 0, seed=0)
        with pytest.raises(ValueError):
            kmeans(np.zeros(3), 1, seed=0)  # not 2-D


class TestRandomAssignment:
    def test_k1_all_zero(self):
        assert np.all(random_assignment(100, 1, seed=0) == 0)

    def test_same_seed_identical(self):
        a = random_assignment(512, 8, seed=123)
        b = random_assignment(512, 8, seed=123)
        assert np.array_equal(a, b)

    def test_binomial_share(self):
        # Mean bucket-0 share over many seeds stays within 5 sigma of 1/2.
        shares = [
            np.mean(random_assignment(512, 2, seed=s) == 0)
            for s in range(1000)
        ]
        sigma = 0.5 / np.sqrt(512 * 1000)
        assert abs(np.mean(shares) - 0.5) < 5 * sigma


class TestHandBucketing:
    def test_exact_division(self):
        buckets = hand_bucketing(list(range(256)), 4)
        sizes = np.bincount(buckets)
        assert sizes.tolist() == [64, 64, 64, 64]
        assert np.all(np.diff(buckets) >= 0)  # contiguous

    def test_remainder_to_earliest(self):
        buckets = hand_bucketing(list(range(26)), 4)
        assert np.bincount(buckets).tolist() == [7, 7, 6, 6]

    def test_singletons_when_k_matches(self):
        buckets = hand_bucketing(list(range(256)), 256)
        assert buckets.tolist() == list(range(256))

    def test_k_beyond_items_is_lossless(self):
        buckets = hand_bucketing(list(range(26)), 32)
        assert buckets.tolist() == list(range(26))
