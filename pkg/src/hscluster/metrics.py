"""Clustering evaluation: extrinsic agreement scores (ARI, NMI) and intrinsic
geometry scores (Silhouette, Davies-Bouldin, Calinski-Harabasz) computable
under Euclidean or Poincare-disc geometry.

Hyperbolic intrinsic scores use geodesic distances and Frechet-mean centroids.
"""

import math
from dataclasses import dataclass, asdict

import numpy as np

from . import geometry
from .errors import DegenerateMetricError, InvalidInputError


@dataclass
class EvaluationReport:
    space: str = "euclidean"
    ari: float = None
    nmi: float = None
    silhouette: float = None
    davies_bouldin: float = None
    calinski_harabasz: float = None

    def to_dict(self):
        return asdict(self)


def _check_labels(labels_a, labels_b):
    a = np.asarray(labels_a).ravel()
    b = np.asarray(labels_b).ravel()
    if a.shape != b.shape:
        raise InvalidInputError("label vectors must have equal length")
    if a.size < 2:
        raise InvalidInputError("need at least 2 samples")
    return a, b


def _contingency(a, b):
    _, ai = np.unique(a, return_inverse=True)
    _, bi = np.unique(b, return_inverse=True)
    table = np.zeros((ai.max() + 1, bi.max() + 1), dtype=np.int64)
    np.add.at(table, (ai, bi), 1)
    return table


def _comb2(x):
    return x * (x - 1) / 2.0


def ari(labels_a, labels_b):
    """Adjusted Rand index: pair counting with expected-index correction."""
    a, b = _check_labels(labels_a, labels_b)
    table = _contingency(a, b)
    n = a.size
    sum_cells = _comb2(table.astype(np.float64)).sum()
    sum_rows = _comb2(table.sum(axis=1).astype(np.float64)).sum()
    sum_cols = _comb2(table.sum(axis=0).astype(np.float64)).sum()
    total = _comb2(float(n))
    expected = sum_rows * sum_cols / total
    max_index = (sum_rows + sum_cols) / 2.0
    if max_index == expected:
        return 1.0
    return float((sum_cells - expected) / (max_index - expected))


def _entropy(counts, n):
    p = counts[counts > 0] / n
    return float(-np.sum(p * np.log(p)))


def nmi(labels_a, labels_b):
    """Mutual information normalized by the arithmetic mean of entropies."""
    a, b = _check_labels(labels_a, labels_b)
    table = _contingency(a, b).astype(np.float64)
    n = a.size
    h_a = _entropy(table.sum(axis=1), n)
    h_b = _entropy(table.sum(axis=0), n)
    if h_a == 0.0 or h_b == 0.0:
        return 0.0
    pa = table.sum(axis=1) / n
    pb = table.sum(axis=0) / n
    mi = 0.0
    for i in range(table.shape[0]):
        for j in range(table.shape[1]):
            if table[i, j] > 0:
                pij = table[i, j] / n
                mi += pij * math.log(pij / (pa[i] * pb[j]))
    mi = max(mi, 0.0)
    return float(mi / ((h_a + h_b) / 2.0))


def _prepare_intrinsic(points, labels, min_clusters=2):
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    labels = np.asarray(labels).ravel()
    if labels.shape[0] != points.shape[0]:
        raise InvalidInputError("labels length must match number of points")
    unique = np.unique(labels)
    if unique.size < min_clusters:
        raise InvalidInputError(f"need at least {min_clusters} clusters")
    return points, labels, unique


def _centroid(points, space):
    if space == "poincare":
        return geometry.frechet_mean(points)
    return points.mean(axis=0)


def silhouette(points, labels, space="euclidean"):
    """Mean silhouette coefficient (b - a) / max(a, b) under the chosen metric."""
    points, labels, unique = _prepare_intrinsic(points, labels)
    dist = geometry.pairwise_dist(points, points, space=space)
    n = points.shape[0]
    masks = {c: labels == c for c in unique}
    scores = np.zeros(n)
    for i in range(n):
        own = masks[labels[i]]
        own_size = own.sum()
        if own_size == 1:
            scores[i] = 0.0  # singleton convention
            continue
        a = dist[i, own].sum() / (own_size - 1)
        b = min(dist[i, masks[c]].mean() for c in unique if c != labels[i])
        denom = max(a, b)
        scores[i] = 0.0 if denom == 0.0 else (b - a) / denom
    return float(scores.mean())


def davies_bouldin(points, labels, space="euclidean"):
    """Davies-Bouldin score: mean over clusters of the worst dispersion ratio."""
    points, labels, unique = _prepare_intrinsic(points, labels)
    centroids = np.array([_centroid(points[labels == c], space) for c in unique])
    dispersions = np.array(
        [
            geometry.pairwise_dist(points[labels == c], centroids[[i]], space=space).mean()
            for i, c in enumerate(unique)
        ]
    )
    centroid_dist = geometry.pairwise_dist(centroids, centroids, space=space)
    k = unique.size
    off_diag = centroid_dist + np.diag(np.full(k, np.inf))
    if np.any(off_diag == 0.0):
        raise DegenerateMetricError("coincident cluster centroids")
    ratios = (dispersions[:, None] + dispersions[None, :]) / off_diag
    return float(np.max(ratios, axis=1).mean())


def calinski_harabasz(points, labels, space="euclidean"):
    """Calinski-Harabasz index: between/within dispersion ratio, df-corrected.

    Returns +inf when the within-cluster dispersion is exactly zero.
    """
    points, labels, unique = _prepare_intrinsic(points, labels)
    n, k = points.shape[0], unique.size
    if n <= k:
        raise InvalidInputError("need more points than clusters")
    global_centroid = _centroid(points, space)
    within = 0.0
    between = 0.0
    for c in unique:
        members = points[labels == c]
        centroid = _centroid(members, space)
        within += float(
            (geometry.pairwise_dist(members, centroid[None, :], space=space) ** 2).sum()
        )
        between += members.shape[0] * float(
            geometry.pairwise_dist(centroid[None, :], global_centroid[None, :], space=space)[0, 0]
            ** 2
        )
    if within == 0.0:
        return math.inf
    return float((between / (k - 1)) / (within / (n - k)))


def evaluate(points, labels, truth=None, space="euclidean"):
    """Full evaluation report; extrinsic scores only when truth is supplied."""
    report = EvaluationReport(space=space)
    if truth is not None:
        report.ari = ari(truth, labels)
        report.nmi = nmi(truth, labels)
    unique = np.unique(np.asarray(labels).ravel())
    if unique.size >= 2:
        report.silhouette = silhouette(points, labels, space=space)
        try:
            report.davies_bouldin = davies_bouldin(points, labels, space=space)
        except DegenerateMetricError:
            report.davies_bouldin = None
        n = np.atleast_2d(points).shape[0]
        if n > unique.size:
            report.calinski_harabasz = calinski_harabasz(points, labels, space=space)
    return report
