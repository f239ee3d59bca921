"""Arithmetic in small finite fields GF(p^k).

Field elements are plain ints in {0, ..., q-1}.  For extension fields the
int encodes the coefficient vector (c_0, ..., c_{k-1}) of the power basis
as c_0 + c_1*p + ... + c_{k-1}*p^(k-1), which is exactly the fixed digit
bijection used everywhere in this package (0 maps to 0, and for prime
fields the encoding is the natural residue map).  `to_digit`/`from_digit`
are therefore range checks, but they are kept as the explicit conversion
points between digit-land and field-land.

Intended for desk-scale q (tables are built eagerly for k > 1); this is
not a cryptographic field implementation.
"""

from __future__ import annotations

from typing import Optional, Sequence


def is_prime(n: int) -> bool:
    """Trial-division primality check."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# -- polynomial helpers over F_p (coefficient lists, low degree first) used
#    only to validate and reduce with the extension modulus


def _pp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pp_trim(out)


def _pp_mod(a, m, p):
    # m must be monic
    a = list(a)
    _pp_trim(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _pp_trim(a)
    return a


def _pp_irreducible(m, p) -> bool:
    """Exhaustive search for monic factors of degree 1..deg(m)//2."""
    deg = len(m) - 1
    for t in range(1, deg // 2 + 1):
        for code in range(p**t):
            f = []
            c = code
            for _ in range(t):
                f.append(c % p)
                c //= p
            f.append(1)  # monic degree t
            if not _pp_mod(m, f, p):
                return False
    return True


class Field:
    """GF(p^k) with int-coded elements; immutable after construction."""

    def __init__(self, p: int, k: int = 1, modulus: Optional[Sequence[int]] = None):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if k < 1:
            raise ValueError(f"extension degree must be >= 1, got {k}")
        if k == 1:
            if modulus is not None:
                raise ValueError("modulus is only accepted for k > 1")
            self.modulus: Optional[tuple] = None
        else:
            if modulus is None:
                raise ValueError(
                    "extension fields need an explicit monic irreducible modulus"
                )
            m = [int(c) for c in modulus]
            if len(m) != k + 1:
                raise ValueError(f"modulus must have degree {k}")
            if any(c < 0 or c >= p for c in m):
                raise ValueError("modulus coefficients must lie in 0..p-1")
            if m[-1] != 1:
                raise ValueError("modulus must be monic")
            if not _pp_irreducible(m, p):
                raise ValueError("modulus is reducible over the prime field")
            self.modulus = tuple(m)
        self.p = p
        self.k = k
        self.q = p**k
        if k > 1:
            self._build_tables()

    # -- element codecs

    def _vec(self, a: int):
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _code(self, vec) -> int:
        out = 0
        for c in reversed(vec):
            out = out * self.p + c
        return out

    def _check(self, a: int) -> int:
        if not isinstance(a, int) or isinstance(a, bool) or not 0 <= a < self.q:
            raise ValueError(f"{a!r} is not an element code of GF({self.q})")
        return a

    # -- tables for k > 1

    def _build_tables(self):
        q = self.q
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            va = self._vec(a)
            for b in range(a, q):
                prod = _pp_mul(va, self._vec(b), self.p)
                c = self._code(_pp_mod(prod, list(self.modulus), self.p) + [0] * self.k)
                mul[a][b] = c
                mul[b][a] = c
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
            else:
                raise AssertionError("non-invertible nonzero element; bad modulus")
        self._mul = mul
        self._inv = inv

    # -- arithmetic

    def add(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        if self.k == 1:
            return (a + b) % self.p
        return self._code(
            [(x + y) % self.p for x, y in zip(self._vec(a), self._vec(b))]
        )

    def sub(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        if self.k == 1:
            return (a - b) % self.p
        return self._code(
            [(x - y) % self.p for x, y in zip(self._vec(a), self._vec(b))]
        )

    def neg(self, a: int) -> int:
        return self.sub(0, a)

    def mul(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        if self.k == 1:
            return (a * b) % self.p
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        self._check(a)
        if a == 0:
            raise ZeroDivisionError("inversion of zero in a finite field")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self._inv[a]

    def pow(self, a: int, n: int) -> int:
        self._check(a)
        if n < 0:
            return self.pow(self.inv(a), -n)
        if self.k == 1:
            return pow(a, n, self.p)
        r, base = 1, a
        while n:
            if n & 1:
                r = self._mul[r][base]
            base = self._mul[base][base]
            n >>= 1
        return r

    # -- the digit bijection (identity on codes, by construction)

    def to_digit(self, a: int) -> int:
        return self._check(a)

    def from_digit(self, digit: int) -> int:
        if not 0 <= digit < self.q:
            raise ValueError(f"digit {digit} out of range 0..{self.q - 1}")
        return digit

    def elements(self) -> range:
        return range(self.q)

    # -- misc

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.p == other.p
            and self.k == other.k
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        if self.k == 1:
            return f"Field({self.p})"
        return f"Field({self.p}, {self.k}, modulus={list(self.modulus)})"
