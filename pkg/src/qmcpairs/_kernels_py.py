"""Pure numpy counting kernels (fallback backend).

Same contract as the compiled module qmcpairs._kernels: ordered pair
counts under the torus sup-norm on float points in [0,1)^d.  The caller
(qmcpairs.paircorr) guarantees 1/g >= radius with a safety margin, so a
3^d cell neighborhood covers the counting radius.
"""

from __future__ import annotations

import itertools

import numpy as np

BACKEND = "python"


def _pair_dist(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    dx = np.abs(a - b)
    np.minimum(dx, 1.0 - dx, out=dx)
    return dx.max(axis=-1)


def count_leq_naive(pts: np.ndarray, radius: float) -> int:
    """Ordered pairs (i, j), i != j, with torus sup-norm distance <= radius."""
    pts = np.ascontiguousarray(pts, dtype=np.float64)
    n = pts.shape[0]
    if n < 2:
        return 0
    total = 0
    chunk = max(1, 2_000_000 // n)
    for i0 in range(0, n, chunk):
        block = pts[i0 : i0 + chunk]
        dist = _pair_dist(block[:, None, :], pts[None, :, :])
        # the diagonal (i == i) always satisfies dist 0 <= radius
        total += int(np.count_nonzero(dist <= radius)) - block.shape[0]
    return total


def count_leq_naive_block(pts: np.ndarray, radius: float, i0: int, i1: int) -> int:
    """Ordered-pair contribution of rows i0..i1-1 paired with all j > i."""
    pts = np.ascontiguousarray(pts, dtype=np.float64)
    n = pts.shape[0]
    total = 0
    for i in range(i0, min(i1, n)):
        if i + 1 >= n:
            break
        dist = _pair_dist(pts[i], pts[i + 1 :])
        total += 2 * int(np.count_nonzero(dist <= radius))
    return total


def count_leq_grid(pts: np.ndarray, radius: float, g: int) -> int:
    """Grid-accelerated count; result is exactly count_leq_naive(pts, radius)."""
    pts = np.ascontiguousarray(pts, dtype=np.float64)
    n, d = pts.shape
    if n < 2:
        return 0
    if g < 3:
        # wraparound makes +/-1 offsets collide; every cell pair is a
        # neighbor pair anyway, so the direct count is the same thing
        return count_leq_naive(pts, radius)
    cells = (pts * g).astype(np.int64)
    np.clip(cells, 0, g - 1, out=cells)
    weights = g ** np.arange(d - 1, -1, -1, dtype=np.int64)
    cid = cells @ weights
    order = np.argsort(cid, kind="stable")
    cid_sorted = cid[order]
    pts_sorted = pts[order]
    idx = np.arange(n)
    total = 0
    for off in itertools.product((-1, 0, 1), repeat=d):
        nid = ((cells + np.asarray(off, dtype=np.int64)) % g) @ weights
        lo = np.searchsorted(cid_sorted, nid, side="left")
        hi = np.searchsorted(cid_sorted, nid, side="right")
        cnt = hi - lo
        m = int(cnt.sum())
        if m == 0:
            continue
        src = np.repeat(idx, cnt)
        tgt = (np.arange(m) - np.repeat(np.cumsum(cnt) - cnt, cnt)) + np.repeat(lo, cnt)
        ok = _pair_dist(pts[src], pts_sorted[tgt]) <= radius
        ok &= order[tgt] != src
        total += int(np.count_nonzero(ok))
    return total
