"""Independent, deliberately naive reference computations used as test oracles."""

from __future__ import annotations

import numpy as np


def hv_inclusion_exclusion(front, ref) -> int:
    """Exact hypervolume of integer points by inclusion-exclusion over all subsets.

    Subsets are built by doubling: each new point joins every subset seen so
    far, flipping its sign and raising its coordinate-wise maximum.
    """
    pts = np.asarray(front, dtype=np.int64)
    ref = np.asarray(ref, dtype=np.int64)
    corners = np.empty((0, 3), dtype=np.int64)
    signs = np.empty(0, dtype=np.int64)
    for p in pts:
        corners = np.vstack([corners, p[None, :], np.maximum(corners, p)])
        signs = np.concatenate([signs, [1], -signs])
    if not len(signs):
        return 0
    return int((signs * np.prod(ref - corners, axis=1)).sum())


def hv_monte_carlo(front, ref, samples: int, seed: int) -> float:
    """Hypervolume estimate by uniform sampling of the box ``[min(front), ref]``."""
    pts = np.asarray(front, dtype=float)
    ref = np.asarray(ref, dtype=float)
    lo = pts.min(axis=0)
    rng = np.random.default_rng(seed)
    draws = lo + (ref - lo) * rng.random((samples, 3))
    hit = np.zeros(samples, dtype=bool)
    for p in pts:
        hit |= np.all(draws >= p, axis=1)
    return float(hit.mean() * np.prod(ref - lo))
