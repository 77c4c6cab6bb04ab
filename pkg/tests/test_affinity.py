"""Kernel values and similarity-matrix construction (W, Wprime, V/E/Z/F)."""

import math

import numpy as np
import pytest

from hscluster import affinity, geometry
from hscluster.affinity import KernelKind, KernelSpec
from hscluster.errors import InvalidInputError, IsolatedVertexError


def test_kernel_spec_validation():
    with pytest.raises(InvalidInputError):
        KernelSpec(sigma=0.0)
    with pytest.raises(InvalidInputError):
        KernelSpec(epsilon=-1.0)


def test_kernel_spec_decay_rate():
    assert KernelSpec(kind=KernelKind.GAUSSIAN_HYPERBOLIC, sigma=0.5).a == 4.0
    assert KernelSpec(kind=KernelKind.POISSON_HYPERBOLIC, sigma=0.5).a == 1.0
    assert KernelSpec(kind=KernelKind.GAUSSIAN_EUCLIDEAN, sigma=2.0).space == "euclidean"
    assert KernelSpec(kind=KernelKind.POISSON_HYPERBOLIC, sigma=2.0).space == "poincare"


def test_kernel_value_identical_points():
    spec = KernelSpec(sigma=0.3)
    p = np.array([0.2, -0.1])
    assert affinity.kernel_value(spec, p, p) == 1.0


def test_kernel_value_cutoff():
    spec = KernelSpec(sigma=1.0, epsilon=0.5)
    assert affinity.kernel_value(spec, np.array([0.5, 0.0]), np.zeros(2)) == 0.0


def test_kernel_value_known():
    # hyperbolic Gaussian, sigma=1, d = ln 3 between (0.5, 0) and the origin
    spec = KernelSpec(kind=KernelKind.GAUSSIAN_HYPERBOLIC, sigma=1.0)
    value = affinity.kernel_value(spec, np.array([0.5, 0.0]), np.zeros(2))
    assert math.isclose(value, math.exp(-math.log(3.0) ** 2), rel_tol=1e-12)


def test_kernel_monotone_in_distance():
    spec = KernelSpec(sigma=0.7)
    dists = np.linspace(0.0, 5.0, 50)
    values = affinity.kernel_from_dist(spec, dists)
    assert np.all(np.diff(values) < 0.0)
    poisson = affinity.kernel_from_dist(
        KernelSpec(kind=KernelKind.POISSON_HYPERBOLIC, sigma=0.7), dists
    )
    assert np.all(np.diff(poisson) < 0.0)


def test_build_affinity_coincident_points():
    w = affinity.build_affinity(np.zeros((2, 2)), KernelSpec(sigma=1.0))
    assert np.allclose(w.entries, np.ones((2, 2)))


def test_build_affinity_tiny_epsilon_gives_identity():
    pts = np.array([[0.0, 0.0], [0.5, 0.0], [-0.5, 0.0]])
    w = affinity.build_affinity(pts, KernelSpec(sigma=1.0, epsilon=1e-9))
    assert np.allclose(w.entries, np.eye(3))


def test_build_affinity_matches_scalar_oracle():
    rng = np.random.default_rng(0)
    pts = geometry.sample_uniform_ball(6, 2, rng, radius=0.9)
    for kind in KernelKind:
        spec = KernelSpec(kind=kind, sigma=0.8, epsilon=2.5)
        w = affinity.build_affinity(pts, spec).entries
        assert np.allclose(w, w.T, atol=1e-12)
        assert np.allclose(np.diag(w), 1.0)
        for i in range(6):
            for j in range(6):
                if i != j:
                    assert math.isclose(
                        w[i, j],
                        affinity.kernel_value(spec, pts[i], pts[j]),
                        rel_tol=1e-10,
                        abs_tol=1e-15,
                    )


def test_build_affinity_needs_two_points():
    with pytest.raises(InvalidInputError):
        affinity.build_affinity(np.zeros((1, 2)), KernelSpec())


def test_modified_affinity_identical_rows():
    w = np.ones((3, 3))
    wp = affinity.build_modified_affinity(w, sigma2=1.0)
    assert np.allclose(wp.entries, np.ones((3, 3)))


def test_modified_affinity_known_value():
    wp = affinity.build_modified_affinity(np.eye(2), sigma2=1.0)
    assert math.isclose(wp.entries[0, 1], math.exp(-2.0), rel_tol=1e-12)
    assert wp.entries[0, 0] == 1.0


def test_modified_affinity_diag_maximal():
    rng = np.random.default_rng(1)
    raw = rng.random((5, 5))
    w = (raw + raw.T) / 2.0
    wp = affinity.build_modified_affinity(w, sigma2=0.5).entries
    assert np.all(np.diag(wp) >= wp.max(axis=1) - 1e-12)


def test_modified_affinity_rejects_asymmetric():
    with pytest.raises(InvalidInputError):
        affinity.build_modified_affinity(np.array([[1.0, 0.2], [0.4, 1.0]]))


def test_landmark_affinity_examples():
    pts = np.array([[0.0, 0.0], [0.3, 0.0], [0.0, 0.4]])
    spec = KernelSpec(sigma=1.0)
    v = affinity.build_landmark_affinity(pts[[1]], pts, spec)
    assert v.shape == (1, 3)
    assert math.isclose(v[0, 1], 1.0)
    for j in range(3):
        assert math.isclose(
            v[0, j], affinity.kernel_value(spec, pts[1], pts[j]), rel_tol=1e-10
        )


def test_landmark_normalize_rank_one():
    v = np.array([[0.5, 0.25, 1.0]])
    f = affinity.landmark_normalize(v)
    # one landmark: E is all ones after column normalization, F constant
    assert np.allclose(f.entries, f.entries[0, 0])


def test_landmark_normalize_column_sums_and_psd():
    rng = np.random.default_rng(2)
    v = rng.random((4, 10)) + 0.05
    col = v.sum(axis=0)
    e = v / col[None, :]
    assert np.allclose(e.sum(axis=0), 1.0)
    f = affinity.landmark_normalize(v).entries
    assert np.allclose(f, f.T, atol=1e-12)
    assert np.linalg.eigvalsh(f).min() >= -1e-10


def test_landmark_normalize_dead_column():
    v = np.array([[1.0, 0.0], [0.5, 0.0]])
    with pytest.raises(IsolatedVertexError) as info:
        affinity.landmark_normalize(v)
    assert info.value.indices == [1]
    assert "epsilon" in str(info.value)


def test_kernel_domination_spot_check():
    # hyperbolic Gaussian never exceeds the Euclidean Gaussian at equal decay
    rng = np.random.default_rng(3)
    x = geometry.sample_uniform_ball(2000, 2, rng, radius=0.9999)
    y = geometry.sample_uniform_ball(2000, 2, rng, radius=0.9999)
    d_h = geometry.paired_dist(x, y, space="poincare")
    d_e = geometry.paired_dist(x, y, space="euclidean")
    assert np.all(np.exp(-(d_h**2)) <= np.exp(-(d_e**2)) + 1e-12)
