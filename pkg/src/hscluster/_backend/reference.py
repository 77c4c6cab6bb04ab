"""Pure-NumPy implementations of the hot distance kernels.

These are the fallback for the compiled extension in ``_hotloops.pyx`` and
double as the reference the benchmark compares against.  All functions take
C-contiguous float64 arrays and return float64 arrays.
"""

import numpy as np

NAME = "numpy"


def pairwise_sq_dist(x, y):
    """Squared Euclidean distances between all rows of x (m,d) and y (n,d)."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    sq = (
        np.sum(x * x, axis=1)[:, None]
        + np.sum(y * y, axis=1)[None, :]
        - 2.0 * (x @ y.T)
    )
    return np.maximum(sq, 0.0)


def paired_sq_dist(x, y):
    """Squared Euclidean distances between corresponding rows of x and y."""
    d = np.asarray(x, dtype=np.float64) - np.asarray(y, dtype=np.float64)
    return np.sum(d * d, axis=1)


def pairwise_disc_dist(x, y):
    """Geodesic distances on the unit Poincare disc, all rows vs all rows.

    Uses the arsinh form, which stays accurate for nearby points where the
    arcosh form cancels catastrophically.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    sq = pairwise_sq_dist(x, y)
    cx = 1.0 - np.sum(x * x, axis=1)
    cy = 1.0 - np.sum(y * y, axis=1)
    ratio = sq / (cx[:, None] * cy[None, :])
    return 2.0 * np.arcsinh(np.sqrt(ratio))


def paired_disc_dist(x, y):
    """Geodesic disc distances between corresponding rows of x and y."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    sq = paired_sq_dist(x, y)
    cx = 1.0 - np.sum(x * x, axis=1)
    cy = 1.0 - np.sum(y * y, axis=1)
    return 2.0 * np.arcsinh(np.sqrt(sq / (cx * cy)))
