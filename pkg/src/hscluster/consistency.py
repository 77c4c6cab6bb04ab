"""Monte Carlo / numerical verification of the theory behind the hyperbolic
kernels: Euclidean-kernel domination, absolute integrability, radiality and
exponential decay of the Fourier transform, and the empirical O(1/sqrt(n))
spectral convergence rate.

Every check is a pure function of (parameters, seed) and returns a
ConsistencyReport that serializes to JSON.
"""

import math
from dataclasses import dataclass, field, asdict

import numpy as np
from scipy.sparse.linalg import eigsh

from . import geometry
from .affinity import KernelKind, KernelSpec, build_affinity
from .errors import InvalidInputError

# Comparisons of mathematically strict inequalities allow this much rounding
# slack; the inequalities have O(1) margins away from coincident points.
FLOAT_SLACK = 1e-12

SAMPLING_RADIUS = 1.0 - geometry.SAMPLING_DELTA


@dataclass
class ConsistencyReport:
    check_name: str
    samples: int
    violations: int
    statistics: dict = field(default_factory=dict)
    passed: bool = False
    seed: int = 0

    def to_dict(self):
        out = asdict(self)
        out["statistics"] = {k: float(v) for k, v in self.statistics.items()}
        return out


def _disc_dist_to_origin(points):
    norms = np.linalg.norm(points, axis=1)
    return 2.0 * np.arctanh(norms)


def sample_domain(n, dim, rng, distribution="uniform"):
    """Draw points from the compact disc domain H (margin 1e-4).

    ``uniform``: Lebesgue-uniform on the truncated ball.  ``blobs``: three
    Euclidean Gaussian blobs pushed through the disc embedding.
    """
    if distribution == "uniform":
        return geometry.sample_uniform_ball(n, dim, rng, radius=SAMPLING_RADIUS)
    if distribution == "blobs":
        centers = np.zeros((3, dim))
        centers[0, 0] = 1.0
        centers[1, 0], centers[1, 1 % dim] = -0.5, 0.9
        centers[2, 0], centers[2, 1 % dim] = -0.5, -0.9
        which = rng.integers(3, size=n)
        draws = centers[which] + 0.4 * rng.standard_normal((n, dim))
        return geometry.embed_to_disc(draws, delta=1e-2)
    raise InvalidInputError(f"unknown distribution {distribution!r}")


def check_kernel_domination(dim=2, n_pairs=1_000_000, a=1.0, kind="gaussian", seed=0, swap=False):
    """Hyperbolic kernel never exceeds its Euclidean counterpart.

    Gaussian: exp(-a d_g^2) <= exp(-a ||x-y||^2) on all of H.  Poisson:
    exp(-a d_g) <= exp(-(a/2) ||x-y||^2) on pairs with ||x-y|| <= 1.
    ``swap=True`` reverses the inequality as a negative control.
    """
    rng = np.random.default_rng(seed)
    x = sample_domain(n_pairs, dim, rng)
    y = sample_domain(n_pairs, dim, rng)
    euclid = geometry.paired_dist(x, y, space="euclidean")
    hyper = geometry.paired_dist(x, y, space="poincare")
    if kind == "gaussian":
        k_hyp = np.exp(-a * hyper**2)
        k_euc = np.exp(-a * euclid**2)
        mask = np.ones(n_pairs, dtype=bool)
    elif kind == "poisson":
        k_hyp = np.exp(-a * hyper)
        k_euc = np.exp(-(a / 2.0) * euclid**2)
        mask = euclid <= 1.0
    else:
        raise InvalidInputError(f"unknown kernel kind {kind!r}")
    gap = (k_hyp - k_euc) if not swap else (k_euc - k_hyp)
    violations = int(np.count_nonzero(gap[mask] > FLOAT_SLACK))
    samples = int(mask.sum())
    return ConsistencyReport(
        check_name=f"kernel-domination-{kind}" + ("-swapped" if swap else ""),
        samples=samples,
        violations=violations,
        statistics={
            "dim": dim,
            "a": a,
            "max_gap": float(gap[mask].max()) if samples else 0.0,
        },
        passed=violations == 0,
        seed=seed,
    )


def check_l1_bound(dim=2, n_samples=1_000_000, a=1.0, seed=0):
    """Monte Carlo integral of the hyperbolic Gaussian over H stays below the
    closed-form Euclidean Gaussian integral (pi/a)^(dim/2)."""
    if not 1 <= dim <= 10:
        raise InvalidInputError("dim must be in [1, 10]")
    rng = np.random.default_rng(seed)
    points = sample_domain(n_samples, dim, rng)
    values = np.exp(-a * _disc_dist_to_origin(points) ** 2)
    volume = math.pi ** (dim / 2.0) / math.gamma(dim / 2.0 + 1.0) * SAMPLING_RADIUS**dim
    estimate = volume * float(values.mean())
    stderr = volume * float(values.std(ddof=1)) / math.sqrt(n_samples)
    bound = (math.pi / a) ** (dim / 2.0)
    passed = estimate + 3.0 * stderr <= bound
    return ConsistencyReport(
        check_name="l1-bound",
        samples=n_samples,
        violations=0 if passed else 1,
        statistics={
            "dim": dim,
            "a": a,
            "estimate": estimate,
            "stderr": stderr,
            "bound": bound,
        },
        passed=passed,
        seed=seed,
    )


def _kernel_grid(grid_size, extent, a):
    axis = np.linspace(-extent, extent, grid_size)
    xx, yy = np.meshgrid(axis, axis, indexing="ij")
    rr = np.sqrt(xx**2 + yy**2)
    inside = rr < SAMPLING_RADIUS
    values = np.zeros_like(rr)
    values[inside] = np.exp(-a * (2.0 * np.arctanh(rr[inside])) ** 2)
    cell = (axis[1] - axis[0]) ** 2
    return xx, yy, values, cell


def _transform_at(xx, yy, values, cell, w):
    phase = np.exp(-1j * (w[0] * xx + w[1] * yy))
    return complex(np.sum(values * phase)) * cell


def check_radial_ft(grid_size=256, extent=1.2, a=1.0, n_rotations=16, seed=0, moduli=(1.0, 2.0, 4.0, 8.0)):
    """The 2-D Fourier transform of the (radial) hyperbolic Gaussian is radial:
    magnitudes at rotated frequencies of equal modulus agree to grid accuracy."""
    if grid_size < 64:
        raise InvalidInputError("grid_size must be >= 64")
    rng = np.random.default_rng(seed)
    xx, yy, values, cell = _kernel_grid(grid_size, extent, a)
    worst = 0.0
    for modulus in moduli:
        angles = rng.uniform(0.0, 2.0 * math.pi, size=n_rotations)
        mags = []
        for theta in np.concatenate(([0.0], angles)):
            w = modulus * np.array([math.cos(theta), math.sin(theta)])
            mags.append(abs(_transform_at(xx, yy, values, cell, w)))
        mags = np.array(mags)
        worst = max(worst, float((mags.max() - mags.min()) / mags.mean()))
    passed = worst <= 1e-2
    return ConsistencyReport(
        check_name="radial-fourier-transform",
        samples=len(moduli) * (n_rotations + 1),
        violations=0 if passed else 1,
        statistics={"a": a, "grid_size": grid_size, "max_rel_discrepancy": worst},
        passed=passed,
        seed=seed,
    )


def check_ft_decay(grid_size=256, extent=1.2, a=1.0, seed=0, omega_max=24.0, n_omega=48,
                   kernel="hyperbolic"):
    """Fit log |k_hat| against |w| over the reliable band; the decay rate must
    be positive with a good linear fit.  ``kernel`` admits ``euclidean`` and
    ``constant`` control profiles for the test suite."""
    if grid_size < 64:
        raise InvalidInputError("grid_size must be >= 64")
    xx, yy, values, cell = _kernel_grid(grid_size, extent, a)
    if kernel == "euclidean":
        rr = np.sqrt(xx**2 + yy**2)
        values = np.where(rr < SAMPLING_RADIUS, np.exp(-a * rr**2), 0.0)
    elif kernel == "constant":
        rr = np.sqrt(xx**2 + yy**2)
        values = np.where(rr < SAMPLING_RADIUS, 1.0, 0.0)
    elif kernel != "hyperbolic":
        raise InvalidInputError(f"unknown kernel profile {kernel!r}")
    omegas = np.linspace(0.5, omega_max, n_omega)
    mags = np.array(
        [abs(_transform_at(xx, yy, values, cell, np.array([w, 0.0]))) for w in omegas]
    )
    peak = abs(_transform_at(xx, yy, values, cell, np.zeros(2)))
    band = mags > peak * 1e-9
    omega_b, log_mag = omegas[band], np.log(mags[band])
    slope, intercept = np.polyfit(omega_b, log_mag, 1)
    predicted = slope * omega_b + intercept
    ss_res = float(np.sum((log_mag - predicted) ** 2))
    ss_tot = float(np.sum((log_mag - log_mag.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 0.0
    decay = -slope
    passed = decay > 0.0 and r2 >= 0.9
    return ConsistencyReport(
        check_name="fourier-decay",
        samples=int(band.sum()),
        violations=0 if passed else 1,
        statistics={
            "a": a,
            "grid_size": grid_size,
            "decay_rate": float(decay),
            "prefactor": float(math.exp(intercept)),
            "r_squared": r2,
        },
        passed=passed,
        seed=seed,
    )


def _laplacian_spectrum(points, sigma, k):
    """Smallest-k eigenvalues of the normalized Laplacian of the hyperbolic
    Gaussian affinity graph over the given disc points."""
    spec = KernelSpec(kind=KernelKind.GAUSSIAN_HYPERBOLIC, sigma=sigma)
    w = build_affinity(points, spec).entries
    degree = w.sum(axis=1)
    inv_sqrt = degree**-0.5
    m = inv_sqrt[:, None] * w * inv_sqrt[None, :]
    m = (m + m.T) / 2.0
    if points.shape[0] <= 2000:
        values = np.linalg.eigvalsh(m)[::-1][:k]
    else:
        values = np.sort(eigsh(m, k=k, which="LA", return_eigenvectors=False))[::-1]
    return 1.0 - values  # eigenvalues of I - M, ascending


def check_convergence_rate(ns=(100, 200, 400, 800, 1600), trials=10, distribution="blobs",
                           seed=0, sigma=4.0, k=5, ref_factor=8):
    """Empirical spectral convergence: deviation of the first k normalized
    Laplacian eigenvalues from a large-sample reference, fitted on log-log
    scale against the sample size."""
    ns = sorted(int(n) for n in ns)
    if len(ns) < 4:
        raise InvalidInputError("need at least 4 sample sizes")
    if trials < 5:
        raise InvalidInputError("need at least 5 trials")
    master = np.random.SeedSequence(seed)
    ref_rng = np.random.default_rng(master.spawn(1)[0])
    n_ref = max(ns) * ref_factor
    reference = _laplacian_spectrum(
        sample_domain(n_ref, 2, ref_rng, distribution), sigma, k
    )
    deviations = np.zeros(len(ns))
    streams = master.spawn(trials)
    for stream in streams:
        rng = np.random.default_rng(stream)
        for i, n in enumerate(ns):
            spectrum = _laplacian_spectrum(sample_domain(n, 2, rng, distribution), sigma, k)
            deviations[i] += np.max(np.abs(spectrum - reference))
    deviations /= trials
    slope, _ = np.polyfit(np.log(ns), np.log(deviations), 1)
    passed = slope <= -0.35
    return ConsistencyReport(
        check_name="convergence-rate",
        samples=trials * len(ns),
        violations=0 if passed else 1,
        statistics={
            "slope": float(slope),
            "reference_size": n_ref,
            **{f"deviation_n{n}": float(d) for n, d in zip(ns, deviations)},
        },
        passed=passed,
        seed=seed,
    )
