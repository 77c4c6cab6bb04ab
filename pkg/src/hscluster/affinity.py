"""Kernel functions and construction of the similarity matrices used by the
clustering pipelines: the affinity W, the row-space affinity Wprime, and the
landmark matrices V / E / Z / F.
"""

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import _backend, geometry
from .errors import InvalidInputError, IsolatedVertexError


class KernelKind(enum.Enum):
    GAUSSIAN_HYPERBOLIC = "gaussian-hyperbolic"
    POISSON_HYPERBOLIC = "poisson-hyperbolic"
    GAUSSIAN_EUCLIDEAN = "gaussian-euclidean"
    POISSON_EUCLIDEAN = "poisson-euclidean"

    @property
    def is_hyperbolic(self):
        return self in (KernelKind.GAUSSIAN_HYPERBOLIC, KernelKind.POISSON_HYPERBOLIC)

    @property
    def is_gaussian(self):
        return self in (KernelKind.GAUSSIAN_HYPERBOLIC, KernelKind.GAUSSIAN_EUCLIDEAN)


@dataclass(frozen=True)
class KernelSpec:
    """Kernel choice plus bandwidth sigma and geodesic cutoff epsilon.

    The decay-rate hyperparameter is 1/sigma^2 for Gaussian kernels and
    1/(2 sigma) for Poisson kernels.
    """

    kind: KernelKind = KernelKind.GAUSSIAN_HYPERBOLIC
    sigma: float = 0.1
    epsilon: float = math.inf

    def __post_init__(self):
        if self.sigma <= 0.0:
            raise InvalidInputError(f"sigma must be positive, got {self.sigma}")
        if self.epsilon <= 0.0:
            raise InvalidInputError(f"epsilon must be positive, got {self.epsilon}")

    @property
    def a(self):
        """Decay rate in exp(-a d^2) (Gaussian) or exp(-a d) (Poisson)."""
        if self.kind.is_gaussian:
            return 1.0 / self.sigma**2
        return 1.0 / (2.0 * self.sigma)

    @property
    def space(self):
        return "poincare" if self.kind.is_hyperbolic else "euclidean"


@dataclass
class AffinityMatrix:
    """Symmetric nonnegative similarity matrix with its pipeline role."""

    entries: np.ndarray
    role: str = "W"  # one of W, Wprime, F

    @property
    def n(self):
        return self.entries.shape[0]


def kernel_from_dist(spec, dist):
    """Apply the kernel profile and cutoff to precomputed distances."""
    dist = np.asarray(dist, dtype=np.float64)
    if spec.kind.is_gaussian:
        values = np.exp(-spec.a * dist**2)
    else:
        values = np.exp(-spec.a * dist)
    if np.isfinite(spec.epsilon):
        values = np.where(dist <= spec.epsilon, values, 0.0)
    return values


def kernel_value(spec, x, y):
    """Kernel similarity of two points in the kernel's native space."""
    if spec.kind.is_hyperbolic:
        d = geometry.dist_disc(x, y)
    else:
        d = np.linalg.norm(np.asarray(x, dtype=np.float64) - np.asarray(y, dtype=np.float64))
    return float(kernel_from_dist(spec, d))


def _symmetrize(matrix):
    return (matrix + matrix.T) / 2.0


def build_affinity(points, spec):
    """Dense affinity W over all point pairs; symmetric with unit diagonal."""
    points = np.ascontiguousarray(np.atleast_2d(points), dtype=np.float64)
    if points.shape[0] < 2:
        raise InvalidInputError("need at least 2 points to build an affinity matrix")
    dist = geometry.pairwise_dist(points, points, space=spec.space)
    w = _symmetrize(kernel_from_dist(spec, dist))
    np.fill_diagonal(w, 1.0)
    return AffinityMatrix(entries=w, role="W")


def build_modified_affinity(w, sigma2=None):
    """Re-kernelize the rows of W: Wprime(i,j) = exp(-||w_i - w_j||^2 / s^2).

    ``sigma2`` defaults to the bandwidth used for W when the caller threads it
    through; here plain 0.1 matches the pipeline default.
    """
    entries = w.entries if isinstance(w, AffinityMatrix) else np.asarray(w, dtype=np.float64)
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise InvalidInputError("W must be a square matrix")
    if not np.allclose(entries, entries.T, atol=1e-12):
        raise InvalidInputError("W must be symmetric")
    if sigma2 is None:
        sigma2 = 0.1
    if sigma2 <= 0.0:
        raise InvalidInputError("sigma2 must be positive")
    rows = np.ascontiguousarray(entries)
    sq = _symmetrize(_backend.pairwise_sq_dist(rows, rows))
    wp = np.exp(-sq / sigma2**2)
    np.fill_diagonal(wp, 1.0)
    return AffinityMatrix(entries=wp, role="Wprime")


def build_landmark_affinity(landmarks, points, spec):
    """Landmark-to-point kernel matrix V of shape (m, N)."""
    landmarks = np.atleast_2d(np.asarray(landmarks, dtype=np.float64))
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if landmarks.shape[0] < 1:
        raise InvalidInputError("need at least one landmark")
    if points.shape[0] < 2:
        raise InvalidInputError("need at least 2 points")
    dist = geometry.pairwise_dist(landmarks, points, space=spec.space)
    return kernel_from_dist(spec, dist)


def landmark_normalize(v):
    """Column-normalize V, rescale rows, and form F = Z^t Z (N x N, PSD)."""
    v = np.asarray(v, dtype=np.float64)
    if v.ndim != 2:
        raise InvalidInputError("V must be a 2-D matrix")
    col_sums = v.sum(axis=0)
    dead_cols = np.flatnonzero(col_sums <= 0.0)
    if dead_cols.size:
        raise IsolatedVertexError(
            dead_cols,
            f"points {dead_cols.tolist()} are beyond the cutoff of every "
            "landmark; raise epsilon or add landmarks",
        )
    e = v / col_sums[None, :]
    row_sums = e.sum(axis=1)
    dead_rows = np.flatnonzero(row_sums <= 0.0)
    if dead_rows.size:
        raise IsolatedVertexError(
            dead_rows,
            f"landmarks {dead_rows.tolist()} are beyond the cutoff of every point",
        )
    z = e * (row_sums**-0.5)[:, None]
    f = _symmetrize(z.T @ z)
    return AffinityMatrix(entries=f, role="F")
