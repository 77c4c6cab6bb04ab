"""Graph Laplacians, smallest-k eigendecomposition, row normalization and the
Ncut / Rayleigh-quotient diagnostics.
"""

from dataclasses import dataclass, field

import numpy as np

from .affinity import AffinityMatrix
from .errors import InvalidInputError, InvalidPartitionError, IsolatedVertexError

DEGREE_FLOOR = 1e-12


@dataclass
class LaplacianBundle:
    degree: np.ndarray          # positive diagonal entries, length N
    laplacian: np.ndarray       # L = D - W
    normalized: np.ndarray      # I - D^{-1/2} W D^{-1/2}


@dataclass
class SpectralEmbedding:
    eigenvalues: np.ndarray     # ascending, length k
    vectors: np.ndarray         # N x k, orthonormal columns
    rows: np.ndarray = None     # N x k row-normalized (T), filled by row_normalize
    zero_rows: np.ndarray = field(default_factory=lambda: np.array([], dtype=int))


def _entries(w):
    return w.entries if isinstance(w, AffinityMatrix) else np.asarray(w, dtype=np.float64)


def build_laplacian(w):
    """Degree matrix, graph Laplacian and symmetric normalized Laplacian."""
    entries = _entries(w)
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise InvalidInputError("affinity must be square")
    degree = entries.sum(axis=1)
    dead = np.flatnonzero(degree < DEGREE_FLOOR)
    if dead.size:
        raise IsolatedVertexError(dead)
    lap = np.diag(degree) - entries
    inv_sqrt = degree**-0.5
    normalized = np.eye(entries.shape[0]) - (inv_sqrt[:, None] * entries * inv_sqrt[None, :])
    normalized = (normalized + normalized.T) / 2.0
    return LaplacianBundle(degree=degree, laplacian=lap, normalized=normalized)


def random_walk_laplacian(w):
    """Diagnostic constructor for the random-walk form I - D^{-1} W."""
    entries = _entries(w)
    degree = entries.sum(axis=1)
    dead = np.flatnonzero(degree < DEGREE_FLOOR)
    if dead.size:
        raise IsolatedVertexError(dead)
    return np.eye(entries.shape[0]) - entries / degree[:, None]


def _canonical_signs(vectors):
    """Flip each column so its first nonzero component is positive."""
    out = vectors.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        nz = np.flatnonzero(col)
        if nz.size and col[nz[0]] < 0.0:
            out[:, j] = -col
    return out


def smallest_eigenpairs(matrix, k):
    """The k algebraically smallest eigenpairs of a symmetric matrix.

    Dense full decomposition with a deterministic sign convention, so
    identical inputs always produce identical output.
    """
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise InvalidInputError("matrix must be square")
    n = matrix.shape[0]
    if not 1 <= k <= n:
        raise InvalidInputError(f"k must be in [1, {n}], got {k}")
    if not np.allclose(matrix, matrix.T, atol=1e-10):
        raise InvalidInputError("matrix is not symmetric within 1e-10")
    sym = (matrix + matrix.T) / 2.0
    values, vectors = np.linalg.eigh(sym)
    order = np.argsort(values, kind="stable")[:k]
    return SpectralEmbedding(
        eigenvalues=values[order],
        vectors=_canonical_signs(vectors[:, order]),
    )


def row_normalize(vectors):
    """Normalize each row of U to unit length.

    Zero rows are mapped to the first standard basis direction; their indices
    are returned alongside the matrix so callers can flag the event.
    """
    u = np.asarray(vectors, dtype=np.float64)
    norms = np.linalg.norm(u, axis=1)
    zero_rows = np.flatnonzero(norms == 0.0)
    safe = np.where(norms == 0.0, 1.0, norms)
    t = u / safe[:, None]
    if zero_rows.size:
        t[zero_rows, :] = 0.0
        t[zero_rows, 0] = 1.0
    return t, zero_rows


def embed(w, k):
    """Spectral embedding of an affinity matrix: bottom-k eigenvectors of the
    normalized Laplacian, rows normalized."""
    bundle = build_laplacian(w)
    embedding = smallest_eigenpairs(bundle.normalized, k)
    embedding.rows, embedding.zero_rows = row_normalize(embedding.vectors)
    return bundle, embedding


def ncut(w, partition):
    """Normalized-cut value of a bipartition: Cut/Vol(A) + Cut/Vol(B)."""
    entries = _entries(w)
    partition = np.asarray(partition)
    if partition.shape != (entries.shape[0],):
        raise InvalidInputError("partition length must match matrix size")
    mask = partition.astype(bool)
    if mask.all() or not mask.any():
        raise InvalidPartitionError("both sides of the partition must be nonempty")
    cut = entries[np.ix_(mask, ~mask)].sum()
    vol_a = entries[mask, :].sum()
    vol_b = entries[~mask, :].sum()
    if vol_a <= 0.0 or vol_b <= 0.0:
        raise InvalidPartitionError("both sides must have positive volume")
    return cut / vol_a + cut / vol_b


def rayleigh_quotient(matrix, z):
    """z^t M z / z^t z for a nonzero vector z."""
    matrix = np.asarray(matrix, dtype=np.float64)
    z = np.asarray(z, dtype=np.float64)
    denom = np.dot(z, z)
    if denom == 0.0:
        raise InvalidInputError("z must be nonzero")
    return float(z @ matrix @ z) / denom
