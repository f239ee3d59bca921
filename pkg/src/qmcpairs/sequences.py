"""Exact point generation: digital sequences, Halton, van der Corput.

Points are stored as per-coordinate digit vectors (most significant digit
first), so coordinate values are exact rationals numerator / base^prec and
interval membership can be decided without floating error.  Floating
views are derived on demand.  The Kronecker sequence is double-only and
exists as a pair-correlation baseline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .fields import Field
from .genmat import GenMatrix


@dataclass(frozen=True)
class ExactPoint:
    """A point in [0,1)^d with exact per-coordinate digits."""

    bases: Tuple[int, ...]
    digits: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.bases) != len(self.digits):
            raise ValueError("one digit vector per coordinate required")
        for b, ds in zip(self.bases, self.digits):
            if b < 2:
                raise ValueError(f"base {b} < 2")
            if any(not 0 <= y < b for y in ds):
                raise ValueError(f"digit out of range for base {b}: {ds}")

    @property
    def dim(self) -> int:
        return len(self.bases)

    def prec(self, j: int) -> int:
        return len(self.digits[j])

    def numerator(self, j: int) -> int:
        num = 0
        for y in self.digits[j]:
            num = num * self.bases[j] + y
        return num

    def denominator(self, j: int) -> int:
        return self.bases[j] ** len(self.digits[j])

    def value(self, j: int) -> Fraction:
        return Fraction(self.numerator(j), self.denominator(j))

    def values(self) -> Tuple[Fraction, ...]:
        return tuple(self.value(j) for j in range(self.dim))

    def floats(self) -> Tuple[float, ...]:
        return tuple(self.numerator(j) / self.denominator(j) for j in range(self.dim))

    def truncate(self, m: int) -> "ExactPoint":
        """Keep the first m digits of every coordinate."""
        if any(m > len(ds) for ds in self.digits):
            raise ValueError(f"cannot truncate to {m} digits; point is shorter")
        if m < 0:
            raise ValueError("m must be >= 0")
        return ExactPoint(self.bases, tuple(ds[:m] for ds in self.digits))


def truncate_point(p: ExactPoint, m: int) -> ExactPoint:
    return p.truncate(m)


# -- radical inverse / Halton --------------------------------------------------


def radical_inverse(b: int, n: int) -> Fraction:
    """Digit reversal of n across the radix point: exact value in [0,1)."""
    if b < 2:
        raise ValueError(f"base must be >= 2, got {b}")
    if n < 0:
        raise ValueError(f"index must be >= 0, got {n}")
    num, prec = 0, 0
    while n:
        n, digit = divmod(n, b)
        num = num * b + digit
        prec += 1
    return Fraction(num, b**prec)


def _digit_count(b: int, n: int) -> int:
    c = 0
    while n:
        n //= b
        c += 1
    return c


def halton_point(
    bases: Sequence[int], n: int, prec: Optional[int] = None
) -> ExactPoint:
    """The n-th Halton point in pairwise coprime bases, digit-padded to prec."""
    bases = tuple(bases)
    for i in range(len(bases)):
        for j in range(i + 1, len(bases)):
            if math.gcd(bases[i], bases[j]) != 1:
                raise ValueError(f"bases must be pairwise coprime: {bases}")
    digits = []
    for b in bases:
        natural = _digit_count(b, n)
        p = natural if prec is None else prec
        if p < natural:
            raise ValueError(
                f"prec {p} would drop nonzero digits of {n} in base {b}"
            )
        ds, m = [], n
        for _ in range(p):
            m, digit = divmod(m, b)
            ds.append(digit)
        digits.append(tuple(ds))
    return ExactPoint(bases, tuple(digits))


def vdc_point(n: int, base: int = 2, prec: Optional[int] = None) -> ExactPoint:
    return halton_point((base,), n, prec)


# -- digital points -------------------------------------------------------------


def _n_digits(q: int, n: int, width: int) -> List[int]:
    ds = []
    for _ in range(width):
        n, digit = divmod(n, q)
        ds.append(digit)
    if n:
        raise ValueError("index does not fit the matrix slice width")
    return ds


def digital_point(
    field: Field, matrices: Sequence[GenMatrix], n: int, prec: int
) -> ExactPoint:
    """The n-th point of the digital sequence with the given matrix slices.

    Coordinate j's digits are the matrix-vector product of C^(j) with the
    base-q digit vector of n, mapped back through the digit bijection.
    """
    if n < 0:
        raise ValueError("index must be >= 0")
    q = field.q
    width = max(_digit_count(q, n), 1)
    digits = []
    for C in matrices:
        if C.cols < width:
            raise ValueError(
                f"matrix slice has {C.cols} columns; index {n} needs {width}"
            )
        if C.rows < prec:
            raise ValueError(f"matrix slice has {C.rows} rows; prec {prec} requested")
        nvec = [field.from_digit(v) for v in _n_digits(q, n, C.cols)]
        ds = []
        for i in range(prec):
            acc = 0
            row = C.entries[i]
            for k, nk in enumerate(nvec):
                if nk:
                    acc = field.add(acc, field.mul(row[k], nk))
            ds.append(field.to_digit(acc))
        digits.append(tuple(ds))
    return ExactPoint((q,) * len(matrices), tuple(digits))


def digital_numerators(
    field: Field, matrices: Sequence[GenMatrix], n0: int, count: int, prec: int
) -> List[List[int]]:
    """Digit-vector numerators of points n0..n0+count-1, one row per point.

    Column j holds numerator(j) over q^prec.  Prime fields use a vectorized
    matrix product; extension fields fall back to per-point arithmetic.
    """
    q = field.q
    n_end = n0 + count - 1
    width = max(_digit_count(q, n_end), 1)
    for C in matrices:
        if C.cols < width or C.rows < prec:
            raise ValueError("matrix slice too small for the requested block")
    if field.k == 1 and q**prec <= 2**62:
        ns = np.arange(n0, n0 + count, dtype=np.int64)
        D = np.empty((count, width), dtype=np.int64)
        for i in range(width):
            D[:, i] = (ns // q**i) % q
        weights = np.array([q ** (prec - 1 - i) for i in range(prec)], dtype=np.int64)
        out = []
        for C in matrices:
            Y = (D @ C.to_array()[:prec, :width].T) % q
            out.append(Y @ weights)
        return [list(col) for col in zip(*(o.tolist() for o in out))]
    pts = [digital_point(field, matrices, n, prec) for n in range(n0, n0 + count)]
    return [[p.numerator(j) for j in range(p.dim)] for p in pts]


def kronecker_point(alphas: Sequence[float], n: int) -> Tuple[float, ...]:
    """Fractional parts of n*alpha; double precision, diagnostics only."""
    return tuple((n * a) % 1.0 for a in alphas)


# -- point sources for curves and the CLI ---------------------------------------


class DigitalSource:
    def __init__(self, field: Field, matrices: Sequence[GenMatrix], prec: int):
        self.field = field
        self.matrices = list(matrices)
        for C in self.matrices:
            if C.field != field:
                raise ValueError("matrix field does not match the source field")
            if C.rows < prec:
                raise ValueError(f"matrix slice has {C.rows} rows; prec {prec} needs more")
        self.prec = prec
        self.dim = len(self.matrices)
        self.name = f"digital(q={field.q},d={self.dim})"

    def float_points(self, n0: int, count: int) -> np.ndarray:
        nums = digital_numerators(
            self.field, self.matrices, n0, count, self.prec
        )
        den = float(self.field.q**self.prec)
        return np.array(nums, dtype=np.float64) / den

    def exact_point(self, n: int) -> ExactPoint:
        return digital_point(self.field, self.matrices, n, self.prec)


class HaltonSource:
    def __init__(self, bases: Sequence[int]):
        self.bases = tuple(bases)
        halton_point(self.bases, 0)  # validates coprimality
        self.dim = len(self.bases)
        self.name = f"halton{self.bases}"

    def float_points(self, n0: int, count: int) -> np.ndarray:
        out = np.empty((count, self.dim), dtype=np.float64)
        for i in range(count):
            p = halton_point(self.bases, n0 + i)
            out[i] = [p.numerator(j) / p.denominator(j) for j in range(self.dim)]
        return out

    def exact_point(self, n: int) -> ExactPoint:
        return halton_point(self.bases, n)


class VdcSource(HaltonSource):
    def __init__(self, base: int = 2):
        super().__init__((base,))
        self.name = f"vdc(base={base})"


class KroneckerSource:
    def __init__(self, alphas: Sequence[float]):
        self.alphas = tuple(float(a) for a in alphas)
        self.dim = len(self.alphas)
        self.name = f"kronecker{self.alphas}"

    def float_points(self, n0: int, count: int) -> np.ndarray:
        ns = np.arange(n0, n0 + count, dtype=np.float64)[:, None]
        return (ns * np.array(self.alphas)) % 1.0


class RandomSource:
    """Seeded i.i.d. uniform baseline; the seed is mandatory on purpose."""

    def __init__(self, dim: int, seed: int):
        self.dim = dim
        self.seed = int(seed)
        self.name = f"random(d={dim},seed={seed})"

    def float_points(self, n0: int, count: int) -> np.ndarray:
        rng = np.random.default_rng(self.seed)
        pts = rng.random((n0 + count, self.dim))
        return pts[n0:]
