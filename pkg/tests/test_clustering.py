"""k-means (Lloyd + k-means++ seeding) under Euclidean and disc metrics."""

import itertools

import numpy as np
import pytest

from hscluster import clustering, geometry
from hscluster.clustering import KMeansConfig
from hscluster.errors import InvalidInputError


def _brute_force_inertia(points, k):
    """Exact optimum over all label assignments (Euclidean centroids)."""
    n = points.shape[0]
    best = np.inf
    for labels in itertools.product(range(k), repeat=n):
        labels = np.array(labels)
        if np.unique(labels).size != k:
            continue
        inertia = 0.0
        for j in range(k):
            members = points[labels == j]
            inertia += float(((members - members.mean(axis=0)) ** 2).sum())
        best = min(best, inertia)
    return best


def test_config_validation():
    with pytest.raises(InvalidInputError):
        KMeansConfig(k=0)
    with pytest.raises(InvalidInputError):
        KMeansConfig(k=2, tol=0.0)
    with pytest.raises(InvalidInputError):
        KMeansConfig(k=2, metric="taxicab")


def test_kmeans_two_pairs_exact():
    points = np.array([[0.0], [0.1], [0.9], [1.0]])
    result = clustering.kmeans(points, KMeansConfig(k=2, seed=0))
    assert result.labels[0] == result.labels[1]
    assert result.labels[2] == result.labels[3]
    assert result.labels[0] != result.labels[2]
    assert np.isclose(result.inertia, _brute_force_inertia(points, 2))
    assert sorted(result.centroids.ravel()) == pytest.approx([0.05, 0.95])


def test_kmeans_matches_brute_force_small():
    rng = np.random.default_rng(0)
    for trial in range(10):
        points = rng.standard_normal((7, 2))
        result = clustering.kmeans(points, KMeansConfig(k=2, n_init=20, seed=trial))
        assert result.inertia <= _brute_force_inertia(points, 2) + 1e-9


def test_kmeans_requires_enough_points():
    with pytest.raises(InvalidInputError):
        clustering.kmeans(np.zeros((2, 2)), KMeansConfig(k=3))


def test_kmeans_deterministic():
    rng = np.random.default_rng(1)
    points = rng.standard_normal((40, 3))
    cfg = KMeansConfig(k=4, seed=7)
    a = clustering.kmeans(points, cfg)
    b = clustering.kmeans(points.copy(), cfg)
    assert np.array_equal(a.labels, b.labels)
    assert np.array_equal(a.centroids, b.centroids)
    assert a.inertia == b.inertia


def test_kmeans_inertia_monotone_within_run():
    rng = np.random.default_rng(2)
    points = rng.standard_normal((60, 2))
    result = clustering.kmeans(points, KMeansConfig(k=3, n_init=1, seed=3))
    history = np.array(result.inertia_history)
    assert np.all(np.diff(history) <= 1e-9)


def test_kmeans_label_permutation_invariant_inertia():
    rng = np.random.default_rng(3)
    centers = np.array([[0.0, 0.0], [6.0, 0.0], [0.0, 6.0]])
    points = np.repeat(centers, 10, axis=0) + 0.2 * rng.standard_normal((30, 2))
    base = clustering.kmeans(points, KMeansConfig(k=3, seed=0))
    # shuffling the rows must not change the optimal inertia found
    perm = rng.permutation(30)
    shuffled = clustering.kmeans(points[perm], KMeansConfig(k=3, seed=0))
    assert np.isclose(base.inertia, shuffled.inertia, rtol=1e-9)
    # same partition up to label permutation
    from hscluster import metrics
    assert metrics.ari(base.labels[perm], shuffled.labels) == 1.0


def test_poincare_kmeans_tiny_ball_matches_euclidean():
    # near the origin the disc metric is ~2x Euclidean: identical partitions
    rng = np.random.default_rng(4)
    points = 1e-3 * rng.standard_normal((30, 2))
    points += np.where(np.arange(30)[:, None] < 15, 0.0, 5e-3)
    euc = clustering.kmeans(points, KMeansConfig(k=2, seed=0, metric="euclidean"))
    hyp = clustering.kmeans(points, KMeansConfig(k=2, seed=0, metric="poincare"))
    same = np.array_equal(euc.labels, hyp.labels)
    flipped = np.array_equal(euc.labels, 1 - hyp.labels)
    assert same or flipped


def test_poincare_kmeans_separated_arcs():
    rng = np.random.default_rng(5)
    left = np.array(
        [geometry.exp_map(np.array([-0.8, 0.0]), 0.05 * rng.standard_normal(2)) for _ in range(25)]
    )
    right = np.array(
        [geometry.exp_map(np.array([0.8, 0.0]), 0.05 * rng.standard_normal(2)) for _ in range(25)]
    )
    points = np.vstack([left, right])
    result = clustering.kmeans(points, KMeansConfig(k=2, seed=0, metric="poincare"))
    assert np.unique(result.labels[:25]).size == 1
    assert np.unique(result.labels[25:]).size == 1
    assert result.labels[0] != result.labels[-1]
    assert np.all(np.linalg.norm(result.centroids, axis=1) < 1.0)


def test_seeding_first_centroid_uniform():
    # with k=1 the seed is a uniformly chosen data point
    points = np.arange(5, dtype=np.float64)[:, None]
    counts = np.zeros(5)
    rng = np.random.default_rng(6)
    trials = 20000
    for _ in range(trials):
        c = clustering.kmeans_pp_seed(points, 1, "euclidean", rng)
        counts[int(c[0, 0])] += 1
    assert np.allclose(counts / trials, 0.2, atol=0.02)


def test_seeding_prefers_distant_points():
    # second centroid lands on the far singleton almost surely
    points = np.array([[0.0], [0.01], [0.02], [100.0]])
    rng = np.random.default_rng(7)
    hits = 0
    for _ in range(200):
        c = clustering.kmeans_pp_seed(points, 2, "euclidean", rng)
        if 100.0 in c or (0.0 in c or 0.01 in c or 0.02 in c):
            pass
        hits += int(100.0 in c)
    assert hits >= 195


def test_seeding_coincident_points():
    points = np.zeros((4, 2))
    rng = np.random.default_rng(8)
    c = clustering.kmeans_pp_seed(points, 3, "euclidean", rng)
    assert c.shape == (3, 2)
    assert np.all(c == 0.0)


def test_empty_cluster_refill():
    # k equals n: every point becomes its own centroid, inertia 0
    points = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    result = clustering.kmeans(points, KMeansConfig(k=3, seed=0))
    assert np.unique(result.labels).size == 3
    assert result.inertia <= 1e-18
