"""Benchmark the compiled distance backend against the NumPy reference.

Run after installing the package (so the Cython extension is built):

    python benchmarks/bench_backends.py [--sizes 500,1000,2000] [--dim 2]

Times the four hot kernels on random disc points with both backends and
reports the speedup plus the maximum absolute discrepancy.
"""

import argparse
import time

import numpy as np

from hscluster._backend import reference

try:
    from hscluster._backend import _hotloops
except ImportError:
    _hotloops = None

FUNCS = ("pairwise_sq_dist", "paired_sq_dist", "pairwise_disc_dist", "paired_disc_dist")


def _time(fn, *args, repeats=5):
    best = float("inf")
    out = None
    for _ in range(repeats):
        start = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="500,1000,2000")
    parser.add_argument("--dim", type=int, default=2)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    if _hotloops is None:
        print("compiled backend not available; only the NumPy reference is installed")
        return

    rng = np.random.default_rng(args.seed)
    print(f"{'function':<22}{'n':>6}{'numpy (ms)':>12}{'cython (ms)':>13}"
          f"{'speedup':>9}{'max |diff|':>12}")
    for n in (int(s) for s in args.sizes.split(",")):
        pts = 0.9 * rng.random((n, args.dim)) * rng.choice([-1.0, 1.0], (n, args.dim))
        pts = np.ascontiguousarray(pts / np.maximum(np.linalg.norm(pts, axis=1, keepdims=True), 1.0) * 0.95)
        for name in FUNCS:
            ref_fn = getattr(reference, name)
            hot_fn = getattr(_hotloops, name)
            t_ref, out_ref = _time(ref_fn, pts, pts)
            t_hot, out_hot = _time(hot_fn, pts, pts)
            diff = float(np.max(np.abs(np.asarray(out_ref) - np.asarray(out_hot))))
            print(f"{name:<22}{n:>6}{t_ref * 1e3:>12.2f}{t_hot * 1e3:>13.2f}"
                  f"{t_ref / t_hot:>9.2f}{diff:>12.2e}")


if __name__ == "__main__":
    main()
