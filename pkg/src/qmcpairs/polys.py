"""Polynomials over GF(q) and the expansions behind generating matrices.

A Poly is an immutable coefficient tuple (int element codes, lowest degree
first; the zero polynomial is the empty tuple).  On top of the ring
operations this module provides

* `laurent_tail(qj, s, r, count)` - the first coefficients a(s,r,k) of the
  negative-power expansion x^r / qj(x)^s = sum_k a(s,r,k) x^(-k-1),
* `base_expansion(k, qj)` - the digits b_s(x) of x^k written in powers of
  qj(x), i.e. x^k = sum_s b_s(x) qj(x)^s with deg b_s < deg qj,
* `mul_order(f, g)` - the multiplicative order of f modulo g,

plus gcd/coprimality, trial-division irreducibility for small degrees, and
the canonical ASCII form `c0+c1*x+c2*x^2` used by the CLI.
"""

from __future__ import annotations

import re
from typing import Iterable, List, Optional, Tuple

from .fields import Field


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable[int] = ()):
        cs = [field.from_digit(c) if isinstance(c, int) else c for c in coeffs]
        for c in cs:
            field._check(c)
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs: Tuple[int, ...] = tuple(cs)

    # -- constructors

    @classmethod
    def zero(cls, field: Field) -> "Poly":
        return cls(field, ())

    @classmethod
    def one(cls, field: Field) -> "Poly":
        return cls(field, (1,))

    @classmethod
    def x(cls, field: Field) -> "Poly":
        return cls(field, (0, 1))

    @classmethod
    def monomial(cls, field: Field, k: int, c: int = 1) -> "Poly":
        return cls(field, (0,) * k + (c,))

    # -- basic queries

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    # -- arithmetic

    def _same_field(self, other: "Poly"):
        if self.field != other.field:
            raise ValueError("polynomials over different fields")

    def __add__(self, other: "Poly") -> "Poly":
        self._same_field(other)
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(F, [F.add(self[i], other[i]) for i in range(n)])

    def __sub__(self, other: "Poly") -> "Poly":
        self._same_field(other)
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(F, [F.sub(self[i], other[i]) for i in range(n)])

    def __mul__(self, other: "Poly") -> "Poly":
        self._same_field(other)
        F = self.field
        if self.is_zero() or other.is_zero():
            return Poly.zero(F)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Poly(F, out)

    def scale(self, c: int) -> "Poly":
        F = self.field
        return Poly(F, [F.mul(c, a) for a in self.coeffs])

    def __divmod__(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        self._same_field(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        db = other.degree
        lead_inv = F.inv(other.coeffs[-1])
        quot = [0] * max(len(rem) - db, 0)
        while len(rem) - 1 >= db and rem:
            c = F.mul(rem[-1], lead_inv)
            shift = len(rem) - 1 - db
            quot[shift] = c
            for i, bi in enumerate(other.coeffs):
                rem[shift + i] = F.sub(rem[shift + i], F.mul(c, bi))
            while rem and rem[-1] == 0:
                rem.pop()
        return Poly(F, quot), Poly(F, rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial power")
        r = Poly.one(self.field)
        base = self
        while n:
            if n & 1:
                r = r * base
            base = base * base
            n >>= 1
        return r

    def __call__(self, a: int) -> int:
        """Evaluate at a field element (Horner)."""
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, a), c)
        return acc

    # -- text form

    def __str__(self):
        return poly_to_string(self)

    def __repr__(self):
        return f"Poly({self.field!r}, {poly_to_string(self)!r})"


# -- canonical ASCII form ---------------------------------------------------

_TERM_RE = re.compile(r"^(?:(\d+)\*)?x(?:\^(\d+))?$|^(\d+)$")


def poly_to_string(p: Poly) -> str:
    """Canonical ascending form, e.g. `1+x+2*x^3`; zero prints as `0`."""
    if p.is_zero():
        return "0"
    terms = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        if k == 0:
            terms.append(str(c))
        elif c == 1:
            terms.append("x" if k == 1 else f"x^{k}")
        else:
            terms.append(f"{c}*x" if k == 1 else f"{c}*x^{k}")
    return "+".join(terms)


def poly_from_string(field: Field, text: str) -> Poly:
    """Parse a `+`-joined sum of `c`, `x`, `c*x`, `x^k`, `c*x^k` monomials.

    Coefficients are integer digits in 0..q-1 (the digit bijection codes).
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial string")
    coeffs: dict = {}
    for term in s.split("+"):
        m = _TERM_RE.match(term)
        if not m:
            raise ValueError(f"malformed polynomial term {term!r} in {text!r}")
        if m.group(3) is not None:
            c, k = int(m.group(3)), 0
        else:
            c = int(m.group(1)) if m.group(1) is not None else 1
            k = int(m.group(2)) if m.group(2) is not None else 1
        c = field.from_digit(c)
        coeffs[k] = field.add(coeffs.get(k, 0), c)
    n = max(coeffs) + 1
    return Poly(field, [coeffs.get(i, 0) for i in range(n)])


# -- gcd, coprimality, irreducibility ---------------------------------------


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd via the Euclidean algorithm."""
    a._same_field(b)
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return a
    return a.scale(a.field.inv(a.coeffs[-1]))


def poly_coprime(a: Poly, b: Poly) -> bool:
    if a.is_zero() or b.is_zero():
        raise ValueError("coprimality is only defined for nonzero polynomials")
    return poly_gcd(a, b).degree == 0


def poly_irreducible(a: Poly) -> bool:
    """Trial division by all monic polynomials of degree 1..deg/2.

    Exhaustive and exact; meant for small degrees (<= 12) over small q.
    """
    if not a.is_monic():
        raise ValueError("irreducibility check expects a monic polynomial")
    deg = a.degree
    if deg < 1:
        raise ValueError("irreducibility is not defined for constants")
    F = a.field
    for t in range(1, deg // 2 + 1):
        for code in range(F.q**t):
            cs = []
            c = code
            for _ in range(t):
                cs.append(c % F.q)
                c //= F.q
            cs.append(1)
            if (a % Poly(F, cs)).is_zero():
                return False
    return True


def monic_irreducibles(field: Field, count: int) -> List[Poly]:
    """First `count` monic irreducibles, ordered by degree then code."""
    out: List[Poly] = []
    deg = 1
    while len(out) < count:
        for code in range(field.q**deg):
            cs = []
            c = code
            for _ in range(deg):
                cs.append(c % field.q)
                c //= field.q
            cs.append(1)
            p = Poly(field, cs)
            if poly_irreducible(p):
                out.append(p)
                if len(out) == count:
                    break
        deg += 1
    return out


# -- negative-power expansion ------------------------------------------------


def laurent_tail(qj: Poly, s: int, r: int, count: int) -> List[int]:
    """First `count` coefficients a(s,r,k) of x^r / qj(x)^s.

    Computed by synthetic division with a sliding remainder window of
    deg(qj) coefficients, applied s times; qj^s is never formed.
    """
    if s < 1:
        raise ValueError(f"power s must be >= 1, got {s}")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if not qj.is_monic() or qj.degree < 1:
        raise ValueError("expansion requires a monic non-constant denominator")
    e = qj.degree
    if not 0 <= r < e:
        raise ValueError(f"r must lie in 0..{e - 1}, got {r}")
    F = qj.field
    g = qj.coeffs  # g[e] == 1

    # First division: x^r / qj.  The window holds the running remainder
    # (degree < e); each step shifts in x and subtracts a_k * qj.
    window = [0] * e
    window[r] = 1
    coeffs = []
    for _ in range(count):
        a = window[e - 1]
        window = [
            F.sub(window[i - 1] if i > 0 else 0, F.mul(a, g[i])) for i in range(e)
        ]
        coeffs.append(a)

    # Each further division consumes the previous tail as a stream.  With
    # b_m the quotient coefficients, b_m = 0 for m < e and
    # b_{k+e} = prev_k - sum_i g_i b_{k+i}; every output index only needs
    # earlier stream entries, so the length never shrinks.
    for _ in range(1, s):
        prev = coeffs
        buf = [0] * e  # b_k .. b_{k+e-1}
        out = []
        for k in range(count - e):
            acc = prev[k]
            for i in range(e):
                acc = F.sub(acc, F.mul(g[i], buf[i]))
            buf = buf[1:] + [acc]
            out.append(acc)
        coeffs = [0] * e + out

    return coeffs[:count]


# -- digits of x^k in powers of qj -------------------------------------------


def base_expansion(k: int, qj: Poly) -> List[Poly]:
    """Remainders (b_0, ..., b_S) with x^k = sum_s b_s(x) * qj(x)^s.

    Each b_s has degree < deg(qj); trailing zero digits are omitted.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if qj.degree < 1 or not qj.is_monic():
        raise ValueError("base polynomial must be monic and non-constant")
    F = qj.field
    digits: List[Poly] = []
    a = Poly.monomial(F, k)
    while not a.is_zero():
        a, b = divmod(a, qj)
        digits.append(b)
    while digits and digits[-1].is_zero():
        digits.pop()
    return digits or [Poly.zero(F)]


# -- multiplicative order -----------------------------------------------------


def pow_mod(f: Poly, n: int, g: Poly) -> Poly:
    """f^n modulo g by square and multiply."""
    if n < 0:
        raise ValueError("negative exponent")
    r = Poly.one(f.field) % g
    base = f % g
    while n:
        if n & 1:
            r = (r * base) % g
        base = (base * base) % g
        n >>= 1
    return r


def mul_order(f: Poly, g: Poly, bound: Optional[int] = None) -> int:
    """Smallest r >= 1 with f^r = 1 (mod g).

    Requires gcd(f, g) = 1 and g non-constant; `bound` defaults to
    q^deg(g), the order of the full residue ring's unit-containing set.
    """
    if g.degree < 1:
        raise ValueError("modulus must be non-constant")
    if f.is_zero() or not poly_coprime(f, g):
        raise ValueError("order requires gcd(f, g) = 1")
    if bound is None:
        bound = f.field.q**g.degree
    one = Poly.one(f.field)
    acc = f % g
    r = 1
    while acc != one:
        acc = (acc * f) % g
        r += 1
        if r > bound:
            raise ValueError(f"order of {f} mod {g} exceeds bound {bound}")
    return r
