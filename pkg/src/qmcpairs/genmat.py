"""Generating matrices for digital sequences and their structure checks.

Builds the finite upper-left slices of the (conceptually infinite)
generating matrices: the classic rows-from-Laurent-tails construction, the
column-by-column construction, and the scrambling matrix S whose k-th
column encodes a monic degree-k product of the defining polynomials.  The
checks are exact: non-singular upper triangular (NUT) structure, the rank
conditions behind the elementary-interval property, and the maximal row
length L_f of the first f rows.

All matrices are immutable; entries are int element codes of a Field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .fields import Field
from .polys import Poly, base_expansion, laurent_tail, poly_coprime

NIEDERREITER = "niederreiter"
CBC = "cbc"


class RowLengthInconclusive(RuntimeError):
    """The nonzero region reaches the slice boundary; only a lower bound
    on the row length of the infinite matrix is known."""

    def __init__(self, lower_bound: int):
        super().__init__(
            f"row length exceeds the inspected slice (>= {lower_bound}); "
            "widen the slice for a conclusive value"
        )
        self.lower_bound = lower_bound


class GenMatrix:
    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: Field, entries: Sequence[Sequence[int]]):
        rows = len(entries)
        if rows == 0 or len(entries[0]) == 0:
            raise ValueError("matrix slice must be non-empty")
        cols = len(entries[0])
        ent = []
        for row in entries:
            if len(row) != cols:
                raise ValueError("ragged matrix rows")
            ent.append(tuple(field._check(v) for v in row))
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries: Tuple[Tuple[int, ...], ...] = tuple(ent)

    @classmethod
    def identity(cls, field: Field, n: int) -> "GenMatrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, GenMatrix)
            and self.field == other.field
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field, self.entries))

    def __repr__(self):
        return f"GenMatrix({self.rows}x{self.cols} over GF({self.field.q}))"

    def __matmul__(self, other: "GenMatrix") -> "GenMatrix":
        return mat_mul(self, other)

    def to_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def to_json_dict(self) -> dict:
        return {
            "q": self.field.q,
            "rows": self.rows,
            "cols": self.cols,
            "entries": [v for row in self.entries for v in row],
        }


# -- sequence definition ------------------------------------------------------


@dataclass(frozen=True)
class SeqDef:
    """A digital sequence definition: field, defining polynomials, method."""

    field: Field
    polys: Tuple[Poly, ...]
    method: str = NIEDERREITER

    def __post_init__(self):
        if self.method not in (NIEDERREITER, CBC):
            raise ValueError(f"unknown construction method {self.method!r}")
        if not self.polys:
            raise ValueError("at least one defining polynomial is required")
        object.__setattr__(self, "polys", tuple(self.polys))
        for p in self.polys:
            if p.field != self.field:
                raise ValueError("polynomial field mismatch")
            if p.degree < 1 or not p.is_monic():
                raise ValueError(f"defining polynomials must be monic non-constant: {p}")
        for i in range(len(self.polys)):
            for j in range(i + 1, len(self.polys)):
                if not poly_coprime(self.polys[i], self.polys[j]):
                    raise ValueError(
                        f"defining polynomials must be pairwise coprime: "
                        f"{self.polys[i]} and {self.polys[j]}"
                    )

    @property
    def d(self) -> int:
        return len(self.polys)

    @property
    def e(self) -> Tuple[int, ...]:
        return tuple(p.degree for p in self.polys)

    @property
    def v(self) -> int:
        return math.lcm(*self.e)

    def matrix(self, j: int, rows: int, cols: int) -> GenMatrix:
        if self.method == NIEDERREITER:
            return niederreiter_matrix(self, j, rows, cols)
        return cbc_matrix(self, j, rows, cols)

    def matrices(self, rows: int, cols: int) -> List[GenMatrix]:
        return [self.matrix(j, rows, cols) for j in range(1, self.d + 1)]


# -- constructions ------------------------------------------------------------


def niederreiter_matrix(sd: SeqDef, j: int, rows: int, cols: int) -> GenMatrix:
    """Row i (1-based) holds the tail coefficients of x^r / q_j(x)^s with
    i = e_j*s - r and r in 0..e_j-1."""
    if not 1 <= j <= sd.d:
        raise ValueError(f"coordinate {j} out of range 1..{sd.d}")
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be >= 1")
    qj = sd.polys[j - 1]
    e = qj.degree
    ent = []
    for i in range(1, rows + 1):
        s = -(-i // e)  # ceil(i / e)
        r = e * s - i
        ent.append(laurent_tail(qj, s, r, cols))
    return GenMatrix(sd.field, ent)


def cbc_matrix(sd: SeqDef, j: int, rows: int, cols: int) -> GenMatrix:
    """Column k holds the digits of x^k in powers of q_j(x): digit b_s fills
    rows e_j*s+1 .. e_j*s+e_j (1-based) with its coefficient vector."""
    if not 1 <= j <= sd.d:
        raise ValueError(f"coordinate {j} out of range 1..{sd.d}")
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be >= 1")
    qj = sd.polys[j - 1]
    e = qj.degree
    ent = [[0] * cols for _ in range(rows)]
    for k in range(cols):
        for s, b in enumerate(base_expansion(k, qj)):
            for t in range(e):
                i = e * s + t  # 0-based row
                if i < rows:
                    ent[i][k] = b[t]
    return GenMatrix(sd.field, ent)


def scrambler_matrix(sd: SeqDef, size: int) -> GenMatrix:
    """The NUT scrambling matrix S: column k holds the coefficients of the
    monic degree-k polynomial x^(r_1) * prod_i q_i^((s_i+...+s_d) v/e_i),
    where the exponents come from the mixed-radix split
    k = d*v*s_d + r_d,  r_i = (i-1)*v*s_{i-1} + r_{i-1},  r_1 in 0..v-1.
    """
    if size < 1:
        raise ValueError("size must be >= 1")
    F = sd.field
    d, v, e = sd.d, sd.v, sd.e
    ent = [[0] * size for _ in range(size)]
    for k in range(size):
        s = [0] * d  # s_1..s_d at indices 0..d-1
        r = k
        for i in range(d, 0, -1):
            s[i - 1], r = divmod(r, i * v)
        p = Poly.monomial(F, r)  # r == r_1
        suffix = 0
        for i in range(d, 0, -1):
            suffix += s[i - 1]
            p = p * sd.polys[i - 1] ** (suffix * v // e[i - 1])
        assert p.degree == k and p.is_monic()
        for n in range(k + 1):
            ent[n][k] = p[n]
    return GenMatrix(F, ent)


# -- matrix operations ---------------------------------------------------------


def mat_mul(a: GenMatrix, b: GenMatrix) -> GenMatrix:
    if a.field != b.field:
        raise ValueError("matrix product over different fields")
    if a.cols != b.rows:
        raise ValueError(f"shape mismatch: {a.cols} columns vs {b.rows} rows")
    F = a.field
    if F.k == 1:
        prod = (a.to_array() @ b.to_array()) % F.p
        return GenMatrix(F, prod.tolist())
    ent = []
    for i in range(a.rows):
        row = []
        for j in range(b.cols):
            acc = 0
            for t in range(a.cols):
                acc = F.add(acc, F.mul(a.entries[i][t], b.entries[t][j]))
            row.append(acc)
        ent.append(row)
    return GenMatrix(F, ent)


def nut_check(m: GenMatrix) -> bool:
    """True iff the slice is upper triangular with nonzero diagonal."""
    if m.rows != m.cols:
        raise ValueError("NUT check needs a square slice")
    for i in range(m.rows):
        if m.entries[i][i] == 0:
            return False
        for j in range(i):
            if m.entries[i][j] != 0:
                return False
    return True


def _rank(field: Field, rows: List[List[int]]) -> int:
    """Exact rank by Gaussian elimination over the field."""
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    col = 0
    while rank < len(rows) and col < ncols:
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = field.inv(rows[rank][col])
        rows[rank] = [field.mul(inv, v) for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                c = rows[r][col]
                rows[r] = [
                    field.sub(v, field.mul(c, w)) for v, w in zip(rows[r], rows[rank])
                ]
        rank += 1
        col += 1
    return rank


@dataclass(frozen=True)
class TseResult:
    ok: bool
    m: Optional[int] = None
    r: Optional[Tuple[int, ...]] = None

    def __bool__(self):
        return self.ok


def _shapes(e: Tuple[int, ...], total: int):
    """All (r_1..r_d) >= 0 with sum e_j r_j == total, lexicographic."""
    d = len(e)

    def rec(j, left, prefix):
        if j == d - 1:
            if left % e[j] == 0:
                yield prefix + (left // e[j],)
            return
        for r in range(left // e[j] + 1):
            yield from rec(j + 1, left - e[j] * r, prefix + (r,))

    yield from rec(0, total, ())


def tse_check(
    matrices: Sequence[GenMatrix], e: Sequence[int], t: int, m_max: int
) -> TseResult:
    """Rank condition for the elementary-interval property.

    For every m <= m_max and every shape (r_1..r_d) with sum e_j r_j = m - t,
    the first e_j*r_j rows of the j-th matrix, truncated to m columns, must
    be jointly linearly independent.  Returns the first violation found
    (smallest m, then lexicographic shape) as a certificate.
    """
    e = tuple(e)
    if len(matrices) != len(e):
        raise ValueError("one degree per matrix required")
    for mat in matrices:
        if mat.rows < m_max or mat.cols < m_max:
            raise ValueError(f"matrix slices must be at least {m_max}x{m_max}")
    field = matrices[0].field
    for m in range(t + 1, m_max + 1):
        for shape in _shapes(e, m - t):
            rows = []
            for j, rj in enumerate(shape):
                for i in range(e[j] * rj):
                    rows.append(list(matrices[j].entries[i][:m]))
            if rows and _rank(field, rows) != len(rows):
                return TseResult(False, m, shape)
    return TseResult(True)


def row_length(matrices: Sequence[GenMatrix], f: int) -> int:
    """1 + index of the last nonzero column among the first f rows of all
    matrices (0 when those rows are all zero).

    Raises RowLengthInconclusive when a nonzero entry sits in the final
    column of the slice, because the infinite matrix may continue.
    """
    if f < 1:
        raise ValueError("f must be >= 1")
    width = min(m.cols for m in matrices)
    for m in matrices:
        if m.rows < f:
            raise ValueError(f"matrix slice has fewer than {f} rows")
    last = -1
    for m in matrices:
        for i in range(f):
            row = m.entries[i]
            for k in range(width - 1, last, -1):
                if row[k] != 0:
                    last = k
                    break
    if last == width - 1:
        raise RowLengthInconclusive(lower_bound=width)
    return last + 1
