"""Closed-form hyperbolic geometry: the four model-space distances, Mobius
gyrovector operations, exp/log maps, Frechet means and the Euclidean-to-disc
embedding.

Points are plain float64 ndarrays.  Disc points live strictly inside the unit
ball; the truncated domain used by the clustering pipelines additionally keeps
norms at most 1 - delta.
"""

from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import DegenerateMetricError, DomainError, InvalidInputError

# Norms at or above 1 - EDGE_TOL are treated as boundary events and pulled
# back to 1 - CLAMP_TO before they can poison downstream arithmetic.
EDGE_TOL = 1e-12
CLAMP_TO = 1e-9


@dataclass(frozen=True)
class GeometryConfig:
    """Margins and solver tolerances for disc-valued operations."""

    delta: float = 1e-2
    frechet_tol: float = 1e-9
    frechet_max_iter: int = 100

    def __post_init__(self):
        if not 0.0 < self.delta < 1.0:
            raise InvalidInputError(f"delta must be in (0, 1), got {self.delta}")
        if self.frechet_tol <= 0.0:
            raise InvalidInputError("frechet_tol must be positive")
        if self.frechet_max_iter < 1:
            raise InvalidInputError("frechet_max_iter must be >= 1")


# Margin used when sampling the compact domain H in the verification suite.
SAMPLING_DELTA = 1e-4


def _as_point(x, name="point"):
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise InvalidInputError(f"{name} must be a 1-D vector, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise InvalidInputError(f"{name} has non-finite coordinates")
    return x


def _check_disc(x, name="point"):
    x = _as_point(x, name)
    if np.dot(x, x) >= 1.0:
        raise DomainError(f"{name} with norm {np.linalg.norm(x):.6g} is not inside the unit ball")
    return x


def clamp_to_ball(x):
    """Pull a point with norm >= 1 - 1e-12 back to norm 1 - 1e-9.

    Returns (point, clamped) where ``clamped`` flags whether anything moved.
    """
    x = np.asarray(x, dtype=np.float64)
    norm = np.linalg.norm(x)
    if norm >= 1.0 - EDGE_TOL:
        return x * ((1.0 - CLAMP_TO) / norm), True
    return x, False


def embed_to_disc(x, delta=1e-2):
    """Map Euclidean points into the open unit ball via x / (||x|| + delta).

    Accepts a single vector or an (N, d) matrix; the direction of every point
    is preserved and the image norm is strictly below 1.
    """
    if delta <= 0.0:
        raise InvalidInputError(f"delta must be positive, got {delta}")
    x = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(x)):
        raise InvalidInputError("input has non-finite coordinates")
    single = x.ndim == 1
    pts = np.atleast_2d(x)
    norms = np.linalg.norm(pts, axis=1, keepdims=True)
    out = pts / (norms + delta)
    return out[0] if single else out


def conformal_ratio(x, y):
    """The scalar 2||x-y||^2 / ((1-||x||^2)(1-||y||^2)) for disc points."""
    x = _check_disc(x, "x")
    y = _check_disc(y, "y")
    diff = x - y
    return 2.0 * np.dot(diff, diff) / ((1.0 - np.dot(x, x)) * (1.0 - np.dot(y, y)))


def dist_disc(x, y):
    """Geodesic distance on the Poincare disc (arsinh form)."""
    ratio = conformal_ratio(x, y)
    return 2.0 * np.arcsinh(np.sqrt(ratio / 2.0))


def dist_disc_arcosh(x, y):
    """Geodesic disc distance via the arcosh closed form (diagnostic twin)."""
    return np.arccosh(1.0 + conformal_ratio(x, y))


def dist_half_space(p1, p2):
    """Geodesic distance in the Poincare half-space model."""
    p1 = _as_point(p1, "p1")
    p2 = _as_point(p2, "p2")
    if p1[-1] <= 0.0 or p2[-1] <= 0.0:
        raise DomainError("half-space points need a strictly positive last coordinate")
    return 2.0 * np.arcsinh(np.linalg.norm(p2 - p1) / (2.0 * np.sqrt(p1[-1] * p2[-1])))


def dist_half_space_log(p1, p2):
    """Equivalent half-space distance via the reflection/log closed form."""
    p1 = _as_point(p1, "p1")
    p2 = _as_point(p2, "p2")
    if p1[-1] <= 0.0 or p2[-1] <= 0.0:
        raise DomainError("half-space points need a strictly positive last coordinate")
    mirror = p1.copy()
    mirror[-1] = -mirror[-1]
    num = np.linalg.norm(p2 - p1) + np.linalg.norm(p2 - mirror)
    return 2.0 * np.log(num / (2.0 * np.sqrt(p1[-1] * p2[-1])))


def dist_klein(u, v):
    """Beltrami-Klein distance via the cross-ratio of the chord through u, v."""
    u = _check_disc(u, "u")
    v = _check_disc(v, "v")
    w = v - u
    ww = np.dot(w, w)
    if ww == 0.0:
        return 0.0
    # Ideal endpoints: ||u + t w|| = 1 with roots t_a < 0 <= 1 < t_b.
    uw = np.dot(u, w)
    uu = np.dot(u, u)
    disc = uw * uw - ww * (uu - 1.0)
    root = np.sqrt(disc)
    t_a = (-uw - root) / ww
    t_b = (-uw + root) / ww
    a = u + t_a * w  # behind u
    b = u + t_b * w  # beyond v
    cross = (np.linalg.norm(a - v) * np.linalg.norm(u - b)) / (
        np.linalg.norm(a - u) * np.linalg.norm(v - b)
    )
    return 0.5 * np.log(cross)


def minkowski_form(u, v):
    """The Minkowski bilinear form -u0 v0 + sum_i ui vi."""
    u = _as_point(u, "u")
    v = _as_point(v, "v")
    return -u[0] * v[0] + np.dot(u[1:], v[1:])


def _check_sheet(u, name="point"):
    u = _as_point(u, name)
    if u.shape[0] < 2:
        raise InvalidInputError(f"{name} needs at least 2 coordinates")
    if abs(minkowski_form(u, u) + 1.0) > 1e-9 or u[0] < 1.0:
        raise DomainError(f"{name} is not on the forward hyperboloid sheet")
    return u


def dist_hyperboloid(u, v):
    """Distance on the forward hyperboloid sheet: arcosh(-B(u, v))."""
    u = _check_sheet(u, "u")
    v = _check_sheet(v, "v")
    val = -minkowski_form(u, v)
    if val < 1.0:
        if val < 1.0 - 1e-12:
            raise DomainError(f"-B(u, v) = {val} below 1 beyond tolerance")
        val = 1.0
    return np.arccosh(val)


def disc_to_hyperboloid(x):
    """Lift disc points onto the hyperboloid sheet (isometric embedding)."""
    x = np.asarray(x, dtype=np.float64)
    single = x.ndim == 1
    pts = np.atleast_2d(x)
    sq = np.sum(pts * pts, axis=1)
    if np.any(sq >= 1.0):
        raise DomainError("disc points must lie strictly inside the unit ball")
    denom = 1.0 - sq
    out = np.empty((pts.shape[0], pts.shape[1] + 1))
    out[:, 0] = (1.0 + sq) / denom
    out[:, 1:] = 2.0 * pts / denom[:, None]
    return out[0] if single else out


def mobius_add(u, v):
    """Mobius gyrovector addition on the unit disc."""
    u = _check_disc(u, "u")
    v = _check_disc(v, "v")
    uv = np.dot(u, v)
    uu = np.dot(u, u)
    vv = np.dot(v, v)
    den = 1.0 + 2.0 * uv + uu * vv
    if abs(den) < 1e-15:
        raise DegenerateMetricError("Mobius addition denominator vanished")
    out = ((1.0 + 2.0 * uv + vv) * u + (1.0 - uu) * v) / den
    out, _ = clamp_to_ball(out)
    return out


def mobius_scalar(r, u):
    """Mobius scalar multiplication r (x) u on the unit disc."""
    u = _check_disc(u, "u")
    norm = np.linalg.norm(u)
    if norm == 0.0:
        return np.zeros_like(u)
    out = np.tanh(r * np.arctanh(norm)) * (u / norm)
    out, _ = clamp_to_ball(out)
    return out


def _conformal_factor(p):
    return 2.0 / (1.0 - np.dot(p, p))


def exp_map(p, v):
    """Exponential map at disc point p applied to tangent vector v."""
    p = _check_disc(p, "p")
    v = _as_point(v, "v")
    norm = np.linalg.norm(v)
    if norm == 0.0:
        return p.copy()
    lam = _conformal_factor(p)
    second = np.tanh(lam * norm / 2.0) * (v / norm)
    return mobius_add(p, second)


def log_map(p, x):
    """Logarithm map at disc point p: tangent vector pointing to x."""
    p = _check_disc(p, "p")
    x = _check_disc(x, "x")
    w = mobius_add(-p, x)
    norm = np.linalg.norm(w)
    if norm == 0.0:
        return np.zeros_like(p)
    lam = _conformal_factor(p)
    return (2.0 / lam) * np.arctanh(norm) * (w / norm)


def frechet_mean(points, weights=None, config=GeometryConfig()):
    """Weighted Frechet (Karcher) mean of disc points.

    Fixed-point tangent-space iteration: move the candidate along the
    weighted mean of the logarithms until the geodesic step falls below
    ``config.frechet_tol``.
    """
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if points.shape[0] == 0:
        raise InvalidInputError("frechet_mean needs at least one point")
    if not np.all(np.isfinite(points)):
        raise InvalidInputError("points have non-finite coordinates")
    if np.any(np.sum(points * points, axis=1) >= 1.0):
        raise DomainError("all points must lie strictly inside the unit ball")
    if weights is None:
        weights = np.ones(points.shape[0])
    weights = np.asarray(weights, dtype=np.float64)
    if weights.shape != (points.shape[0],) or np.any(weights < 0.0):
        raise InvalidInputError("weights must be nonnegative, one per point")
    total = weights.sum()
    if total <= 0.0:
        raise InvalidInputError("weights must sum to a positive value")
    weights = weights / total

    center = weights @ points
    norm = np.linalg.norm(center)
    if norm > 1.0 - 1e-6:
        center *= (1.0 - 1e-6) / norm
    for _ in range(config.frechet_max_iter):
        tangent = np.zeros_like(center)
        for p, w in zip(points, weights):
            if w > 0.0:
                tangent += w * log_map(center, p)
        new_center = exp_map(center, tangent)
        step = dist_disc(center, new_center)
        center = new_center
        if step < config.frechet_tol:
            break
    center, _ = clamp_to_ball(center)
    return center


def frechet_gradient_norm(center, points, weights=None):
    """Riemannian norm of the objective gradient at ``center`` (diagnostic)."""
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if weights is None:
        weights = np.ones(points.shape[0])
    weights = np.asarray(weights, dtype=np.float64)
    weights = weights / weights.sum()
    grad = np.zeros_like(np.asarray(center, dtype=np.float64))
    for p, w in zip(points, weights):
        grad -= 2.0 * w * log_map(center, p)
    return _conformal_factor(np.asarray(center)) * np.linalg.norm(grad)


def pairwise_dist(points_a, points_b, space="euclidean"):
    """Dense distance matrix between two point sets under the chosen space.

    ``space`` is ``euclidean`` or ``poincare``; the hot loop runs on the
    selected compiled/NumPy backend.
    """
    a = np.ascontiguousarray(np.atleast_2d(points_a), dtype=np.float64)
    b = np.ascontiguousarray(np.atleast_2d(points_b), dtype=np.float64)
    if space == "euclidean":
        return np.sqrt(_backend.pairwise_sq_dist(a, b))
    if space == "poincare":
        for arr, name in ((a, "points_a"), (b, "points_b")):
            if np.any(np.sum(arr * arr, axis=1) >= 1.0):
                raise DomainError(f"{name} must lie strictly inside the unit ball")
        return _backend.pairwise_disc_dist(a, b)
    raise InvalidInputError(f"unknown space {space!r}")


def paired_dist(points_a, points_b, space="euclidean"):
    """Distances between corresponding rows of two equally shaped point sets."""
    a = np.ascontiguousarray(np.atleast_2d(points_a), dtype=np.float64)
    b = np.ascontiguousarray(np.atleast_2d(points_b), dtype=np.float64)
    if a.shape != b.shape:
        raise InvalidInputError("paired_dist needs equally shaped inputs")
    if space == "euclidean":
        return np.sqrt(_backend.paired_sq_dist(a, b))
    if space == "poincare":
        return _backend.paired_disc_dist(a, b)
    raise InvalidInputError(f"unknown space {space!r}")


def sample_uniform_ball(n, dim, rng, radius=1.0):
    """Sample n points uniformly (Lebesgue) from the ball of given radius."""
    directions = rng.standard_normal((n, dim))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    radii = radius * rng.random(n) ** (1.0 / dim)
    return directions * radii[:, None]
