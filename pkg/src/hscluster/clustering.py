"""Lloyd k-means with k-means++ seeding in a pluggable metric space.

``metric`` is either ``euclidean`` (arithmetic-mean centroids, used on rows of
the spectral embedding) or ``poincare`` (Frechet-mean centroids, used for
landmark selection and pre-clustering on the disc).
"""

from dataclasses import dataclass, field

import numpy as np

from . import geometry
from .errors import InvalidInputError


@dataclass(frozen=True)
class KMeansConfig:
    k: int
    n_init: int = 10
    max_iter: int = 300
    tol: float = 1e-6
    seed: int = 0
    metric: str = "euclidean"

    def __post_init__(self):
        if self.k < 1:
            raise InvalidInputError(f"k must be >= 1, got {self.k}")
        if self.tol <= 0.0:
            raise InvalidInputError("tol must be positive")
        if self.metric not in ("euclidean", "poincare"):
            raise InvalidInputError(f"unknown metric {self.metric!r}")


@dataclass
class Clustering:
    labels: np.ndarray
    centroids: np.ndarray
    inertia: float
    iterations_run: int
    inertia_history: list = field(default_factory=list)


def _space(metric):
    return "poincare" if metric == "poincare" else "euclidean"


def kmeans_pp_seed(points, k, metric, rng):
    """k-means++ seeding: first centroid uniform, the rest sampled with
    probability proportional to squared distance to the nearest chosen one."""
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    n = points.shape[0]
    if n < k:
        raise InvalidInputError(f"need at least k={k} points, got {n}")
    chosen = [int(rng.integers(n))]
    if k == 1:
        return points[chosen].copy()
    best_sq = geometry.pairwise_dist(points, points[chosen], space=_space(metric))[:, 0] ** 2
    for _ in range(1, k):
        total = best_sq.sum()
        if total <= 0.0:
            idx = int(rng.integers(n))  # all points coincide with a centroid
        else:
            idx = int(rng.choice(n, p=best_sq / total))
        chosen.append(idx)
        new_sq = geometry.pairwise_dist(points, points[[idx]], space=_space(metric))[:, 0] ** 2
        best_sq = np.minimum(best_sq, new_sq)
    return points[chosen].copy()


def _update_centroid(members, metric):
    if metric == "poincare":
        return geometry.frechet_mean(members)
    return members.mean(axis=0)


def _lloyd(points, centroids, cfg):
    n = points.shape[0]
    space = _space(cfg.metric)
    history = []
    labels = None
    for iteration in range(1, cfg.max_iter + 1):
        dist = geometry.pairwise_dist(points, centroids, space=space)
        labels = np.argmin(dist, axis=1)
        inertia = float(np.sum(dist[np.arange(n), labels] ** 2))
        history.append(inertia)

        new_centroids = centroids.copy()
        for j in range(cfg.k):
            members = points[labels == j]
            if members.shape[0] == 0:
                # refill with the point farthest from its assigned centroid
                worst = int(np.argmax(dist[np.arange(n), labels]))
                new_centroids[j] = points[worst]
                labels[worst] = j
            else:
                new_centroids[j] = _update_centroid(members, cfg.metric)
        movement = geometry.paired_dist(centroids, new_centroids, space=space)
        centroids = new_centroids
        if movement.max() < cfg.tol:
            break

    dist = geometry.pairwise_dist(points, centroids, space=space)
    labels = np.argmin(dist, axis=1)
    inertia = float(np.sum(dist[np.arange(n), labels] ** 2))
    history.append(inertia)
    return Clustering(
        labels=labels,
        centroids=centroids,
        inertia=inertia,
        iterations_run=iteration,
        inertia_history=history,
    )


def kmeans(points, cfg):
    """Best-of-n_init Lloyd k-means under the configured metric.

    Deterministic for fixed (points, cfg): per-restart RNG streams are split
    from the master seed and the winner is the lowest inertia, ties broken by
    restart index.
    """
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if points.shape[0] < cfg.k:
        raise InvalidInputError(
            f"need at least k={cfg.k} points, got {points.shape[0]}"
        )
    streams = np.random.SeedSequence(cfg.seed).spawn(cfg.n_init)
    best = None
    for stream in streams:
        rng = np.random.default_rng(stream)
        centroids = kmeans_pp_seed(points, cfg.k, cfg.metric, rng)
        result = _lloyd(points, centroids, cfg)
        if best is None or result.inertia < best.inertia:
            best = result
    return best
