"""Backend selection for the hot distance kernels.

The compiled Cython extension is preferred when it imported cleanly; the
NumPy reference implementation is the fallback.  Set ``HSCLUSTER_BACKEND`` to
``numpy`` or ``cython`` to force a choice (forcing ``cython`` when the
extension is unavailable raises ImportError).
"""

import os

from . import reference


def _select():
    forced = os.environ.get("HSCLUSTER_BACKEND")
    if forced == "numpy":
        return reference
    try:
        from . import _hotloops
    except ImportError:
        if forced == "cython":
            raise
        return reference
    if forced not in (None, "cython"):
        raise ValueError(f"unknown HSCLUSTER_BACKEND {forced!r}")
    return _hotloops


_impl = _select()

backend_name = _impl.NAME
pairwise_sq_dist = _impl.pairwise_sq_dist
paired_sq_dist = _impl.paired_sq_dist
pairwise_disc_dist = _impl.pairwise_disc_dist
paired_disc_dist = _impl.paired_disc_dist

__all__ = [
    "backend_name",
    "pairwise_sq_dist",
    "paired_sq_dist",
    "pairwise_disc_dist",
    "paired_disc_dist",
    "reference",
]
