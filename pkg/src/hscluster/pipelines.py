"""End-to-end clustering pipelines.

Hyperbolic family: HSCA (full), HLSC-K (landmark), FHSC (pre-cluster + small
spectral problem).  Euclidean mirrors: ESCA, ELSC-K, FESC.  The Euclidean
variants differ only by skipping the disc embedding and measuring distances
with the Euclidean metric, so hyperbolic-vs-Euclidean comparisons isolate the
geometry.
"""

import time
from contextlib import contextmanager
from dataclasses import dataclass, field, replace

import numpy as np

from . import affinity as aff
from . import clustering as km
from . import geometry, spectral
from .affinity import KernelKind, KernelSpec
from .clustering import KMeansConfig
from .errors import HsclusterError, InvalidInputError, PipelineStageError

ALGORITHMS = ("hsca", "esca", "hlsc-k", "elsc-k", "fhsc", "fesc")
_HYPERBOLIC = {"hsca", "hlsc-k", "fhsc"}
_LANDMARK = {"hlsc-k", "elsc-k", "fhsc", "fesc"}


@dataclass(frozen=True)
class PipelineConfig:
    algorithm: str = "hsca"
    kernel: KernelSpec = field(default_factory=KernelSpec)
    k: int = 2
    m: int = None            # landmarks / pre-clusters; default derived from k and N
    delta: float = 1e-2
    kmeans: KMeansConfig = None
    seed: int = 42
    landmark_svd: bool = False   # HLSC-K fast mode: right singular vectors of Z

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise InvalidInputError(f"unknown algorithm {self.algorithm!r}")
        if self.k < 1:
            raise InvalidInputError("k must be >= 1")
        if self.delta <= 0.0:
            raise InvalidInputError("delta must be positive")


@dataclass
class PipelineResult:
    labels: np.ndarray
    clustering: km.Clustering
    embedding: spectral.SpectralEmbedding
    embedded_points: np.ndarray = None
    timings_ms: dict = field(default_factory=dict)
    flags: list = field(default_factory=list)


class _Timer:
    def __init__(self):
        self.timings = {}

    @contextmanager
    def stage(self, name):
        start = time.perf_counter()
        try:
            yield
        except HsclusterError as exc:
            raise PipelineStageError(name, exc) from exc
        finally:
            self.timings[name] = (time.perf_counter() - start) * 1000.0


def _kernel_for(cfg):
    """Force the kernel's space to match the algorithm family."""
    kind = cfg.kernel.kind
    hyperbolic = cfg.algorithm in _HYPERBOLIC
    if kind.is_gaussian:
        kind = KernelKind.GAUSSIAN_HYPERBOLIC if hyperbolic else KernelKind.GAUSSIAN_EUCLIDEAN
    else:
        kind = KernelKind.POISSON_HYPERBOLIC if hyperbolic else KernelKind.POISSON_EUCLIDEAN
    return KernelSpec(kind=kind, sigma=cfg.kernel.sigma, epsilon=cfg.kernel.epsilon)


def _kmeans_cfg(cfg, k, seed, metric="euclidean"):
    if cfg.kmeans is None:
        return KMeansConfig(k=k, seed=seed, metric=metric)
    return replace(cfg.kmeans, k=k, seed=seed, metric=metric)


def _derive_seeds(seed, count):
    return [int(s) for s in np.random.SeedSequence(seed).generate_state(count, dtype=np.uint64)]


def _default_m(n, k):
    return min(n, max(10 * k, 100))


def _spectral_cluster(matrix, cfg, seed, timer, flags):
    """HSCA steps 3-9 applied to an affinity-like matrix."""
    kernel = _kernel_for(cfg)
    with timer.stage("modified-affinity"):
        wp = aff.build_modified_affinity(matrix, sigma2=kernel.sigma)
    with timer.stage("laplacian"):
        bundle = spectral.build_laplacian(wp)
    with timer.stage("eigendecomposition"):
        embedding = spectral.smallest_eigenpairs(bundle.normalized, cfg.k)
    with timer.stage("row-normalize"):
        embedding.rows, embedding.zero_rows = spectral.row_normalize(embedding.vectors)
        if embedding.zero_rows.size:
            flags.append(f"zero-rows:{embedding.zero_rows.tolist()}")
    with timer.stage("kmeans"):
        result = km.kmeans(embedding.rows, _kmeans_cfg(cfg, cfg.k, seed))
    return result, embedding


def _full_pipeline(points, cfg, timer, flags, seed):
    kernel = _kernel_for(cfg)
    with timer.stage("affinity"):
        w = aff.build_affinity(points, kernel)
    result, embedding = _spectral_cluster(w, cfg, seed, timer, flags)
    return result, embedding


def _landmark_pipeline(points, cfg, timer, flags, seeds):
    n = points.shape[0]
    m = cfg.m if cfg.m is not None else _default_m(n, cfg.k)
    if not cfg.k <= m <= n:
        raise InvalidInputError(f"landmark count m={m} must satisfy k <= m <= N")
    kernel = _kernel_for(cfg)
    metric = "poincare" if cfg.algorithm in _HYPERBOLIC else "euclidean"
    with timer.stage("landmark-kmeans"):
        pre = km.kmeans(points, _kmeans_cfg(cfg, m, seeds[0], metric=metric))
    with timer.stage("landmark-affinity"):
        v = aff.build_landmark_affinity(pre.centroids, points, kernel)
        f = aff.landmark_normalize(v)
    if cfg.landmark_svd:
        with timer.stage("landmark-svd"):
            z = _z_from_v(v)
            _, _, vt = np.linalg.svd(z, full_matrices=False)
            vectors = spectral._canonical_signs(vt[: cfg.k].T)
            rows, zero_rows = spectral.row_normalize(vectors)
            embedding = spectral.SpectralEmbedding(
                eigenvalues=np.array([]), vectors=vectors, rows=rows, zero_rows=zero_rows
            )
        with timer.stage("kmeans"):
            result = km.kmeans(embedding.rows, _kmeans_cfg(cfg, cfg.k, seeds[1]))
        return result, embedding
    result, embedding = _spectral_cluster(f, cfg, seeds[1], timer, flags)
    return result, embedding


def _z_from_v(v):
    col_sums = v.sum(axis=0)
    e = v / col_sums[None, :]
    row_sums = e.sum(axis=1)
    return e * (row_sums**-0.5)[:, None]


def _fast_pipeline(points, cfg, timer, flags, seeds):
    n = points.shape[0]
    m = cfg.m if cfg.m is not None else _default_m(n, cfg.k)
    if not cfg.k <= m <= n:
        raise InvalidInputError(f"pre-cluster count m={m} must satisfy k <= m <= N")
    metric = "poincare" if cfg.algorithm in _HYPERBOLIC else "euclidean"
    with timer.stage("pre-kmeans"):
        pre = km.kmeans(points, _kmeans_cfg(cfg, m, seeds[0], metric=metric))
    result, embedding = _full_pipeline(pre.centroids, cfg, timer, flags, seeds[1])
    labels = result.labels[pre.labels]
    return result, embedding, labels


def run(data, cfg):
    """Run the configured pipeline on an (N, d) Euclidean data matrix."""
    points = np.atleast_2d(np.asarray(data, dtype=np.float64))
    n = points.shape[0]
    if n < cfg.k:
        raise InvalidInputError(f"need at least k={cfg.k} points, got {n}")
    timer = _Timer()
    flags = []
    seeds = _derive_seeds(cfg.seed, 2)

    embedded = None
    if cfg.algorithm in _HYPERBOLIC:
        with timer.stage("embed"):
            embedded = geometry.embed_to_disc(points, cfg.delta)
        working = embedded
    else:
        working = points

    if cfg.algorithm in ("hsca", "esca"):
        result, embedding = _full_pipeline(working, cfg, timer, flags, seeds[1])
        labels = result.labels
    elif cfg.algorithm in ("hlsc-k", "elsc-k"):
        result, embedding = _landmark_pipeline(working, cfg, timer, flags, seeds)
        labels = result.labels
    else:
        result, embedding, labels = _fast_pipeline(working, cfg, timer, flags, seeds)

    return PipelineResult(
        labels=np.asarray(labels),
        clustering=result,
        embedding=embedding,
        embedded_points=embedded,
        timings_ms=timer.timings,
        flags=flags,
    )


# Decay-rate grid for bandwidth selection; h = 1/sigma^2 (Gaussian) or
# 1/(2 sigma) (Poisson).  Applied identically to every algorithm under test.
HYPERPARAM_GRID = (0.01, 0.05, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0)


def sigma_grid(kind, grid=HYPERPARAM_GRID):
    """Bandwidths corresponding to the decay-rate grid for a kernel kind."""
    if kind.is_gaussian:
        return tuple(h**-0.5 for h in grid)
    return tuple(1.0 / (2.0 * h) for h in grid)


def grid_search(data, truth, cfg, score=None):
    """Run the configured pipeline at every grid bandwidth; keep the best.

    ``score`` maps (truth, labels) to a scalar, default ARI.  Returns
    (best_sigma, best_result, best_score, curve) where curve lists
    (sigma, score) over the whole grid.
    """
    from . import metrics

    if score is None:
        score = metrics.ari
    curve = []
    best = None
    for sigma in sigma_grid(cfg.kernel.kind):
        trial = replace(cfg, kernel=replace(cfg.kernel, sigma=sigma))
        result = run(data, trial)
        value = score(truth, result.labels)
        curve.append((sigma, value))
        if best is None or value > best[2]:
            best = (sigma, result, value)
    return best[0], best[1], best[2], curve


def _run_as(data, cfg, algorithm):
    return run(data, replace(cfg, algorithm=algorithm))


def run_hsca(data, cfg):
    return _run_as(data, cfg, "hsca")


def run_esca(data, cfg):
    return _run_as(data, cfg, "esca")


def run_hlsck(data, cfg):
    return _run_as(data, cfg, "hlsc-k")


def run_elsck(data, cfg):
    return _run_as(data, cfg, "elsc-k")


def run_fhsc(data, cfg):
    return _run_as(data, cfg, "fhsc")


def run_fesc(data, cfg):
    return _run_as(data, cfg, "fesc")
