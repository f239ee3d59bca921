"""Pair-correlation statistics under the torus sup-norm.

Counts ordered pairs (n, l), n != l, with distance at most s * N^(-1/d)
and compares the normalized count F_N(s) = count/N against the Poissonian
target (2s)^d.  Two data paths:

* float points (numpy arrays): grid-accelerated counting through the
  compiled backend when available (see qmcpairs._backend), with a naive
  O(N^2) reference mode;
* exact points (ExactPoint or Fraction tuples): all comparisons are done
  in integer arithmetic, so boundary cases (distance exactly equal to the
  radius) are decided correctly.  Irrational radii s * N^(-1/d) are
  handled by comparing d-th powers, which are rational.

Counting conventions: the radius test is <=, range counts use (lo, hi],
and every unordered pair contributes twice.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import List, Sequence, Tuple

import numpy as np

from . import _backend
from .sequences import ExactPoint


# -- distances -----------------------------------------------------------------


def torus_dist(x, y):
    """max_j min(|x_j - y_j|, 1 - |x_j - y_j|); exact on rational inputs."""
    if isinstance(x, ExactPoint):
        x = x.values()
    if isinstance(y, ExactPoint):
        y = y.values()
    if len(x) != len(y):
        raise ValueError(f"dimension mismatch: {len(x)} vs {len(y)}")
    best = None
    for a, b in zip(x, y):
        delta = abs(a - b)
        delta = min(delta, 1 - delta)
        if best is None or delta > best:
            best = delta
    return best


# -- exact point sets ------------------------------------------------------------


class _ExactSet:
    """Points with per-coordinate common denominators (integer numerators)."""

    def __init__(self, nums: List[Tuple[int, ...]], dens: Tuple[int, ...]):
        self.nums = nums
        self.dens = dens
        self.n = len(nums)
        self.d = len(dens)

    @classmethod
    def from_points(cls, points) -> "_ExactSet":
        vals: List[Tuple[Fraction, ...]] = []
        for p in points:
            if isinstance(p, ExactPoint):
                vals.append(p.values())
            else:
                vals.append(tuple(Fraction(c) for c in p))
        d = len(vals[0])
        if any(len(v) != d for v in vals):
            raise ValueError("points of mixed dimension")
        dens = []
        for j in range(d):
            den = 1
            for v in vals:
                den = den * v[j].denominator // math.gcd(den, v[j].denominator)
            dens.append(den)
        nums = [
            tuple(int(v[j] * dens[j]) for j in range(d)) for v in vals
        ]
        return cls(nums, tuple(dens))

    def axis_dist(self, i: int, k: int, j: int) -> int:
        """Numerator of the torus distance along axis j (over dens[j])."""
        a = abs(self.nums[i][j] - self.nums[k][j])
        return min(a, self.dens[j] - a)

    def dist_leq(self, i: int, k: int, rp: Fraction, d: int) -> bool:
        """sup-norm distance <= rp^(1/d), decided exactly."""
        mn, md = 0, 1
        for j in range(self.d):
            a = self.axis_dist(i, k, j)
            if a * md > mn * self.dens[j]:
                mn, md = a, self.dens[j]
        return mn**d * rp.denominator <= rp.numerator * md**d


def _is_exact_input(points) -> bool:
    if isinstance(points, np.ndarray):
        return False
    if len(points) == 0:
        return False
    first = points[0]
    if isinstance(first, ExactPoint):
        return True
    return any(isinstance(c, (Fraction, int)) for c in first)


def _radius_pow(radius, d: int) -> Fraction:
    r = Fraction(radius) if not isinstance(radius, Fraction) else radius
    if r < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    return r**d


def _exact_count_leq(pts: _ExactSet, rp: Fraction, method: str) -> int:
    n, d = pts.n, pts.d
    if n < 2:
        return 0
    if rp * 2**d >= 1:  # radius >= 1/2 dominates every torus distance
        return n * (n - 1)
    if method == "naive":
        total = 0
        for i in range(n):
            for k in range(i + 1, n):
                if pts.dist_leq(i, k, rp, d):
                    total += 2
        return total

    cap = max(1, int(math.ceil(n ** (1.0 / d))))
    rf = float(rp) ** (1.0 / d)
    if rf == 0.0 or rf * (cap + 1) < 1.0:
        g = cap
    else:
        g = max(1, min(cap, int(1.0 / rf)))
    while g > 1 and rp * g**d > 1:  # enforce cell width 1/g >= radius exactly
        g -= 1

    cells: dict = {}
    coords = []
    for i in range(n):
        c = tuple((pts.nums[i][j] * g) // pts.dens[j] for j in range(d))
        coords.append(c)
        cells.setdefault(c, []).append(i)
    total = 0
    for i in range(n):
        axes = []
        for j in range(d):
            c = coords[i][j]
            cand = {c, (c + 1) % g, (c - 1) % g}
            axes.append(sorted(cand))
        for nbr in product(*axes):
            for k in cells.get(nbr, ()):
                if k != i and pts.dist_leq(i, k, rp, d):
                    total += 1
    return total


# -- float path -------------------------------------------------------------------


def _float_grid_g(n: int, d: int, radius: float) -> int:
    cap = max(1, int(math.ceil(n ** (1.0 / d))))
    if radius <= 0.0 or radius * (cap + 1) < 1.0:
        return cap
    # one cell fewer than 1/radius allows for float rounding at cell
    # boundaries, keeping grid == naive an exact identity
    return max(1, min(cap, int(1.0 / radius) - 1))


def _float_count_leq(
    pts: np.ndarray, radius: float, method: str, threads: int = 1
) -> int:
    n, d = pts.shape
    if n < 2:
        return 0
    if radius >= 0.5:  # torus distances never exceed 1/2
        return n * (n - 1)
    pts = np.ascontiguousarray(pts, dtype=np.float64)
    if method == "naive":
        if threads > 1:
            blocks = max(2 * threads, 1)
            step = -(-n // blocks)
            bounds = [(i, min(i + step, n)) for i in range(0, n, step)]
            with ThreadPoolExecutor(max_workers=threads) as ex:
                parts = ex.map(
                    lambda b: _backend.count_leq_naive_block(pts, radius, *b), bounds
                )
                return sum(parts)
        return _backend.count_leq_naive(pts, radius)
    return _backend.count_leq_grid(pts, radius, _float_grid_g(n, d, radius))


# -- public counting API ------------------------------------------------------------


def count_pairs_leq(points, radius, method: str = "grid", threads: int = 1) -> int:
    """Ordered pairs (n, l), n != l, with torus sup-norm distance <= radius.

    `points` is either a float array of shape (N, d) or a sequence of exact
    points; exact inputs get exact boundary decisions.  `method` is "grid"
    (cell-accelerated) or "naive" (the O(N^2) reference).
    """
    if method not in ("grid", "naive"):
        raise ValueError(f"unknown counting method {method!r}")
    if _is_exact_input(points):
        pts = points if isinstance(points, _ExactSet) else _ExactSet.from_points(points)
        return _exact_count_leq(pts, _radius_pow(radius, pts.d), method)
    pts = np.asarray(points, dtype=np.float64)
    if float(radius) < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    return _float_count_leq(pts, float(radius), method, threads)


def count_pairs_in(points, lo, hi, method: str = "grid", threads: int = 1) -> int:
    """Ordered pairs with distance in the half-open interval (lo, hi]."""
    if not 0 <= lo < hi:
        raise ValueError(f"need 0 <= lo < hi, got ({lo}, {hi})")
    return count_pairs_leq(points, hi, method, threads) - count_pairs_leq(
        points, lo, method, threads
    )


# -- F_N(s) curves --------------------------------------------------------------------


@dataclass(frozen=True)
class PpcEntry:
    s: float
    count: int
    F: float
    target: float


@dataclass(frozen=True)
class PpcCurve:
    N: int
    d: int
    entries: Tuple[PpcEntry, ...] = field(default_factory=tuple)

    def rows(self):
        return [(self.N, e.s, e.count, e.F, e.target) for e in self.entries]


def ppc_curve(points, s_grid: Sequence[float], method: str = "grid") -> PpcCurve:
    """F_N(s) = count(radius = s N^(-1/d)) / N for each s, with the
    Poissonian target (2s)^d alongside."""
    s_list = [float(s) for s in s_grid]
    if any(s < 0 for s in s_list):
        raise ValueError("s values must be >= 0")
    if s_list != sorted(s_list):
        raise ValueError("s grid must be sorted ascending")
    exact = _is_exact_input(points)
    if exact:
        pts = _ExactSet.from_points(points)
        n, d = pts.n, pts.d
    else:
        arr = np.asarray(points, dtype=np.float64)
        n, d = arr.shape
    entries = []
    for s in s_list:
        if exact:
            rp = Fraction(s) ** d / n
            count = _exact_count_leq(pts, rp, method)
        else:
            count = _float_count_leq(arr, s * n ** (-1.0 / d), method)
        entries.append(
            PpcEntry(s=s, count=count, F=count / n, target=(2.0 * s) ** d)
        )
    return PpcCurve(N=n, d=d, entries=tuple(entries))


def ppc_convergence(
    source, n_list: Sequence[int], s_grid: Sequence[float], method: str = "grid"
) -> List[Tuple[int, float, int, float, float, float]]:
    """One F_N(s) curve per prefix length N; rows (N, s, count, F, target, |F-target|)."""
    ns = [int(n) for n in n_list]
    if ns != sorted(ns) or len(set(ns)) != len(ns):
        raise ValueError("N list must be strictly increasing")
    rows = []
    for n in ns:
        pts = source.float_points(0, n)
        curve = ppc_curve(pts, s_grid, method)
        for e in curve.entries:
            rows.append((n, e.s, e.count, e.F, e.target, abs(e.F - e.target)))
    return rows
