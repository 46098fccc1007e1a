"""Pure-numpy kernel for streaming diagonal recurrence counts.

Drop-in fallback for the compiled extension; both backends must produce
bit-identical bucket counts, so the distance accumulation order is fixed
(coordinate index ascending) and no fused multiply-add is allowed.
"""

import numpy as np


def radius_bucket_counts(points, radii):
    """Histogram pair distances per diagonal offset into radius buckets.

    points: (T, dim) float64, radii: (R,) float64 strictly ascending.
    Returns (R, T-1) int64 where entry [k, j] counts pairs (t, t+j+1)
    whose smallest covering radius is radii[k] (closed threshold).
    Pairs farther than radii[-1] are dropped.  Cumulative sums over the
    radius axis therefore give per-radius recurrence counts.
    """
    n_time, dim = points.shape
    n_radii = radii.shape[0]
    buckets = np.zeros((n_radii, n_time - 1), dtype=np.int64)
    for off in range(1, n_time):
        lead = points[off:]
        lag = points[: n_time - off]
        diff = lead[:, 0] - lag[:, 0]
        acc = diff * diff
        for k in range(1, dim):  # ascending k: keeps backends bit-identical
            diff = lead[:, k] - lag[:, k]
            acc = acc + diff * diff
        dist = np.sqrt(acc)
        # side="left": first radius >= dist, so ties land inside (closed ball)
        idx = np.searchsorted(radii, dist, side="left")
        hist = np.bincount(idx, minlength=n_radii + 1)
        buckets[:, off - 1] = hist[:n_radii]
    return buckets
