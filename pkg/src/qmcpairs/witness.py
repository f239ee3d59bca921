"""Desk-scale witnesses that the constructed sequences are not Poissonian.

The criterion: a sequence fails Poissonian pair correlations if along some
N subsequence at least c*N ordered pairs have distance in
(a*N^(-1/d), b*N^(-1/d)] while c > (2b)^d - (2a)^d > 0.  This module
computes the witness parameters for digital sequences (pairing the first
q^m points with the next q^m through shared elementary intervals) and for
Halton sequences (pairing x_n with x_(n+M) for a modulus M built from
multiplicative orders), then verifies every claimed regularity on the
actual points with exact arithmetic.

Large parameters blow up N doubly fast, so verification refuses oversized
instances rather than thrash; structural findings are reported separately
from the final verdict because desk-scale instances often satisfy the
former and not the latter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .fields import Field
from .genmat import GenMatrix, SeqDef
from .polys import mul_order
from .sequences import digital_numerators, radical_inverse

Number = Union[int, float, Fraction]


class BudgetExceededError(RuntimeError):
    """The witness N exceeds the configured verification budget."""


class InfeasibleWitnessError(ValueError):
    """The witness parameters cannot satisfy the gap/slack conditions."""


# -- the counting criterion -----------------------------------------------------


@dataclass(frozen=True)
class Prop1Result:
    gap: float
    gap_ok: bool
    count_ok: bool
    verdict: bool
    required: float


def prop1_check(
    a: Number, b: Number, c: Number, d: int, count: int, N: int
) -> Prop1Result:
    """Checks one N of a candidate witnessing subsequence: the pair count
    must reach c*N and the constants must satisfy c > (2b)^d - (2a)^d > 0."""
    if not (a > 0 and b > 0 and c > 0):
        raise ValueError("a, b, c must be positive")
    if not a < b:
        raise ValueError(f"need a < b, got a={a}, b={b}")
    if d < 1:
        raise ValueError("dimension must be >= 1")
    gap = (2 * b) ** d - (2 * a) ** d
    gap_ok = c > gap > 0
    count_ok = count >= c * N
    return Prop1Result(
        gap=float(gap),
        gap_ok=bool(gap_ok),
        count_ok=bool(count_ok),
        verdict=bool(gap_ok and count_ok),
        required=float(c * N),
    )


# -- reports ----------------------------------------------------------------------


@dataclass(frozen=True)
class WitnessReport:
    N: int
    a: float
    b: float
    c: float
    lo: float
    hi: float
    measured_count: int
    required: float
    qualifying_n: int
    gap_ok: bool
    count_ok: bool
    verdict: bool
    structural_checks: Dict[str, bool]
    notes: Tuple[str, ...] = ()

    def structure_ok(self) -> bool:
        return all(self.structural_checks.values())

    def to_json_dict(self) -> dict:
        return {
            "N": self.N,
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "lo": self.lo,
            "hi": self.hi,
            "gap_ok": self.gap_ok,
            "count_ok": self.count_ok,
            "measured_count": self.measured_count,
            "required": self.required,
            "qualifying_n": self.qualifying_n,
            "structural_checks": dict(self.structural_checks),
            "verdict": self.verdict,
            "notes": list(self.notes),
        }


# -- digital witness ---------------------------------------------------------------


@dataclass(frozen=True)
class DigitalWitness:
    seqdef: SeqDef
    u: int
    v: int
    tau: Tuple[int, ...]
    theta: int
    m: int
    M: int
    N: int
    w: int
    eps: Fraction
    a: float
    b: float
    c: float
    gap_ok: bool
    eps_ok: bool
    feasible: bool
    notes: Tuple[str, ...] = ()

    @property
    def d(self) -> int:
        return self.seqdef.d

    @property
    def vk(self) -> int:
        """Interval resolution u*v*theta (digits per coordinate)."""
        return self.m // self.d

    @property
    def uv(self) -> int:
        return self.u * self.v


def _is_power_of(u: int, p: int) -> bool:
    if u < 1:
        return False
    while u % p == 0:
        u //= p
    return u == 1


def _digital_eps_max(q: int, w: int, d: int) -> float:
    """Largest eps keeping (2b)^d - (2a)^d below c = 1/q (bisection)."""
    W = 2 ** (1.0 / d) * w / q
    c = 1.0 / q
    lo_eps, hi_eps = 0.0, W  # the gap value is increasing in eps on (0, W)
    for _ in range(200):
        mid = (lo_eps + hi_eps) / 2
        gap = 2**d * ((W + mid) ** d - (W - mid) ** d)
        if gap < c:
            lo_eps = mid
        else:
            hi_eps = mid
    return lo_eps


def digital_witness_params(
    sd: SeqDef, u: int, eps: Optional[Number] = None
) -> DigitalWitness:
    """Witness parameters for a digital sequence definition.

    tau_i is the least r making q_i^(r v / e_i) = 1 modulo every
    q_j^(v / e_j), j != i, computed as the lcm of the per-j orders;
    m = u*v*theta*d, M = q^m, N = 2*M.  The window constants are
    a, b = 2^(1/d) w/q -+ eps and c = 1/q, where w is the largest digit
    jump |phi(alpha + 1) - phi(alpha)| over the field.
    """
    F = sd.field
    d, q, v = sd.d, F.q, sd.v
    if d < 2:
        raise ValueError("the digital witness construction needs d >= 2")
    if not _is_power_of(u, F.p):
        raise ValueError(f"u = {u} is not a power of the characteristic {F.p}")

    tau = []
    for i in range(d):
        fi = sd.polys[i] ** (v // sd.e[i])
        orders = [
            mul_order(fi, sd.polys[j] ** (v // sd.e[j]))
            for j in range(d)
            if j != i
        ]
        tau.append(math.lcm(*orders))
    theta = math.lcm(*tau)
    m = u * v * theta * d
    M = q**m
    N = 2 * M
    w = max(abs(F.add(alpha, 1) - alpha) for alpha in F.elements())

    uv = u * v
    slack = 2 ** (1.0 / d) / q**uv
    eps_max = _digital_eps_max(q, w, d)
    notes: List[str] = []
    if eps is None:
        if slack < eps_max:
            eps_frac = Fraction((slack + eps_max) / 2)
        else:
            eps_frac = Fraction(slack)
            notes.append(
                f"no feasible eps exists: slack {slack:.6g} >= gap bound {eps_max:.6g}"
            )
    else:
        eps_frac = eps if isinstance(eps, Fraction) else Fraction(eps)
    if eps_frac <= 0:
        raise ValueError("eps must be positive")
    if eps_frac**d * q**d >= 2 * w**d:  # eps >= 2^(1/d) w / q makes a <= 0
        raise ValueError(f"eps = {float(eps_frac):.6g} is too large: a must stay positive")

    # eps must strictly exceed 2^(1/d)/q^(u v): exact d-th power comparison
    eps_ok = eps_frac**d * q ** (uv * d) > 2
    if d == 2:
        # gap < c reduces to (16 w eps)^2 * 2 < (2^d... ) -> 512 w^2 eps^2 < 1
        gap_ok = 512 * w**2 * eps_frac**2 < 1
    else:
        W = 2 ** (1.0 / d) * w / q
        gap = 2**d * ((W + float(eps_frac)) ** d - (W - float(eps_frac)) ** d)
        gap_ok = 0 < gap < 1.0 / q
        notes.append("gap condition evaluated in floating point (d != 2)")
    if not eps_ok:
        notes.append(
            f"eps {float(eps_frac):.6g} does not exceed the interval slack "
            f"{slack:.6g}; matched pairs may fall outside (a, b]"
        )
    if not gap_ok:
        notes.append("gap condition (2b)^d - (2a)^d < c fails for this eps")

    W = 2 ** (1.0 / d) * w / q
    return DigitalWitness(
        seqdef=sd,
        u=u,
        v=v,
        tau=tuple(tau),
        theta=theta,
        m=m,
        M=M,
        N=N,
        w=w,
        eps=eps_frac,
        a=W - float(eps_frac),
        b=W + float(eps_frac),
        c=1.0 / q,
        gap_ok=bool(gap_ok),
        eps_ok=bool(eps_ok),
        feasible=bool(gap_ok and eps_ok),
        notes=tuple(notes),
    )


def _digital_window_flags(
    dist_num: int, center_num: int, prec: int, q: int, vk: int, d: int, eps: Fraction
) -> bool:
    """Exact membership of dist in (a N^(-1/d), b N^(-1/d)]: equivalent to
    |dist - w q^-(vk+1)| < eps 2^(-1/d) q^-vk with sign-aware endpoints."""
    delta = dist_num - center_num
    en, ed = eps.numerator, eps.denominator
    rhs = en**d * q ** (d * prec)
    if delta < 0:
        lhs = 2 * (-delta) ** d * q ** (vk * d) * ed**d
        return lhs < rhs
    lhs = 2 * delta**d * q ** (vk * d) * ed**d
    return lhs <= rhs


def digital_witness_verify(
    wit: DigitalWitness,
    matrices: Sequence[GenMatrix],
    budget: int = 2**21,
    pattern_samples: int = 64,
) -> WitnessReport:
    """Runs the full desk-scale verification of a digital witness.

    Buckets the first M and second M truncated points by their elementary
    interval, checks the one-to-one matching, verifies every matched-pair
    distance against the predicted interval, counts pairs falling in the
    (a, b] window exactly, and spot-checks the digit-difference pattern
    (leading zeros, a lone 1, more zeros) through the matrix slices.
    """
    if not wit.feasible:
        raise InfeasibleWitnessError(
            "witness parameters are infeasible: " + "; ".join(wit.notes)
        )
    if wit.N > budget:
        raise BudgetExceededError(
            f"witness needs N = {wit.N} points, over the budget {budget}"
        )
    F = wit.seqdef.field
    q, d, m, M, N = F.q, wit.d, wit.m, wit.M, wit.N
    vk, uv = wit.vk, wit.uv
    prec = m + 1
    if len(matrices) != d:
        raise ValueError(f"expected {d} matrices, got {len(matrices)}")
    for C in matrices:
        if C.rows < prec or C.cols < prec:
            raise ValueError(f"matrix slices must be at least {prec}x{prec}")

    nums = digital_numerators(F, matrices, 0, N, prec)
    cols = [np.array([row[j] for row in nums], dtype=np.int64) for j in range(d)]

    shift = q ** (prec - vk)
    key = np.zeros(N, dtype=np.int64)
    for j in range(d):
        key = key * q**vk + cols[j] // shift
    first, second = key[:M], key[M:]
    order1 = np.argsort(first, kind="stable")
    order2 = np.argsort(second, kind="stable")
    one_one_first = bool(np.array_equal(first[order1], np.arange(M)))
    one_one_second = bool(np.array_equal(second[order2], np.arange(M)))

    # matched pair for interval t: n = order1[t], l = M + order2[t]
    D = q**prec
    dist = np.zeros(M, dtype=np.int64)
    for j in range(d):
        delta = np.abs(cols[j][order1] - cols[j][M + order2])
        np.minimum(delta, D - delta, out=delta)
        np.maximum(dist, delta, out=dist)

    center = wit.w * q ** (prec - vk - 1)
    half = q ** (prec - vk - uv)
    in_interval = (dist >= center - half) & (dist < center + half)

    # digit condition on coordinate 1 of the first-half point
    digit1 = (cols[0][order1] // q ** (prec - 1 - vk)) % q
    jump = np.array([abs(F.add(alpha, 1) - alpha) for alpha in F.elements()])
    cond = jump[digit1] == wit.w
    digit_cond_count = int(np.count_nonzero(cond))
    cond_pairs_in_interval = bool(np.all(in_interval[cond]))

    qualifying = sum(
        1
        for t in range(M)
        if _digital_window_flags(int(dist[t]), center, prec, q, vk, d, wit.eps)
    )
    measured = 2 * qualifying
    count_ok = measured * q >= N  # measured >= c N with c = 1/q, exactly

    # digit-difference pattern through the matrix slices, on sampled pairs
    step = max(1, M // max(pattern_samples, 1))
    pattern_ok = True
    arrs = [C.to_array()[: m + 1, : m + 1] for C in matrices]
    for t in range(0, M, step):
        n, l = int(order1[t]), M + int(order2[t])
        nd = [(n // q**i) % q for i in range(m + 1)]
        ld = [(l // q**i) % q for i in range(m + 1)]
        delta_vec = [F.sub(F.from_digit(b), F.from_digit(a)) for a, b in zip(nd, ld)]
        for j in range(d):
            if F.k == 1:
                y = (arrs[j] @ np.array(delta_vec, dtype=np.int64)) % q
                y = [int(x) for x in y]
            else:
                y = [
                    _dot_field(F, matrices[j].entries[i], delta_vec)
                    for i in range(m + 1)
                ]
            if any(y[i] != 0 for i in range(vk)) or y[vk] != 1:
                pattern_ok = False
            if any(y[i] != 0 for i in range(vk + 1, vk + uv)):
                pattern_ok = False

    structural = {
        "one_one_first_half": one_one_first,
        "one_one_second_half": one_one_second,
        "digit_condition_count_ok": digit_cond_count * q >= M,
        "condition_pairs_in_interval": cond_pairs_in_interval,
        "all_pairs_in_interval": bool(np.all(in_interval)),
        "difference_pattern_ok": pattern_ok,
    }
    notes = list(wit.notes)
    if not structural["all_pairs_in_interval"]:
        notes.append(
            "pairs outside the predicted interval exist (expected when the "
            "maximal digit jump w is not attained by every digit)"
        )
    invd = wit.N ** (-1.0 / d)
    return WitnessReport(
        N=N,
        a=wit.a,
        b=wit.b,
        c=wit.c,
        lo=wit.a * invd,
        hi=wit.b * invd,
        measured_count=measured,
        required=N / q,
        qualifying_n=qualifying,
        gap_ok=wit.gap_ok,
        count_ok=bool(count_ok),
        verdict=bool(wit.gap_ok and count_ok),
        structural_checks=structural,
        notes=tuple(notes),
    )


def _dot_field(F: Field, row: Sequence[int], vec: Sequence[int]) -> int:
    acc = 0
    for a, b in zip(row, vec):
        if a and b:
            acc = F.add(acc, F.mul(a, b))
    return acc


# -- Halton witness -----------------------------------------------------------------


@dataclass(frozen=True)
class HaltonWitness:
    bases: Tuple[int, ...]
    u: int
    kvec: Tuple[int, ...]
    P: Tuple[int, ...]
    tau: Tuple[int, ...]
    M: int
    L: int
    N: int
    gamma_pow: Fraction  # gamma^d = 1 + prod 1/b_j
    f_u: float
    F_ratio: Fraction  # (1 + b1^(1-u)) / (1 - b1^(1-u)), so f_u = F_ratio^(d/(d-1))
    deltas: Tuple[Optional[int], ...]  # delta_j for j >= 2
    xi: Tuple[float, ...]
    eq8_ok: Tuple[bool, ...]
    xi_ge_1: Tuple[bool, ...]
    separation: Tuple[bool, ...]
    a_pow: Optional[Fraction]
    b_pow: Optional[Fraction]
    a_pow_float: float
    b_pow_float: float
    c: Fraction
    gap_ok: bool
    exact: bool
    notes: Tuple[str, ...] = ()

    @property
    def d(self) -> int:
        return len(self.bases)

    @property
    def v(self) -> Tuple[int, ...]:
        """Per-coordinate interval resolutions (u tau_1 k_1, 2 tau_j k_j)."""
        out = [self.u * self.tau[0] * self.kvec[0]]
        for j in range(1, self.d):
            out.append(2 * self.tau[j] * self.kvec[j])
        return tuple(out)

    @property
    def a(self) -> float:
        return self.a_pow_float ** (1.0 / self.d)

    @property
    def b(self) -> float:
        return self.b_pow_float ** (1.0 / self.d)


def _mult_order(base: int, mod: int) -> int:
    if math.gcd(base, mod) != 1:
        raise ValueError(f"{base} is not a unit modulo {mod}")
    if mod == 1:
        return 1
    acc = base % mod
    r = 1
    while acc != 1:
        acc = acc * base % mod
        r += 1
        if r > mod:
            raise AssertionError("order search exceeded the modulus")
    return r


def _validate_bases(bases: Sequence[int]) -> Tuple[int, ...]:
    bases = tuple(int(b) for b in bases)
    if len(bases) < 2:
        raise ValueError("the Halton witness construction needs d >= 2")
    if any(b < 2 for b in bases):
        raise ValueError("bases must all be >= 2")
    for i in range(len(bases)):
        for j in range(i + 1, len(bases)):
            if math.gcd(bases[i], bases[j]) != 1:
                raise ValueError(f"bases must be pairwise coprime: {bases}")
    if any(bases[0] >= b for b in bases[1:]):
        raise ValueError(f"the first base must be strictly minimal: {bases}")
    return bases


def halton_witness_params(
    bases: Sequence[int], u: int, kvec: Sequence[int]
) -> HaltonWitness:
    """Witness parameters for the Halton sequence in the given bases.

    P_1 = prod_{j>=2} b_j^2 and P_i = b_1^u prod_{j>=2, j!=i} b_j^2; tau_i
    are the corresponding multiplicative orders, M and L the pairing modulus
    and block length, and the window constants come from the xi_j chain,
    validated exactly through integer powers.
    """
    bases = _validate_bases(bases)
    d = len(bases)
    if u < 2:
        raise ValueError(f"u must be >= 2, got {u}")
    kvec = tuple(int(k) for k in kvec)
    if len(kvec) != d or any(k < 0 for k in kvec):
        raise ValueError(f"kvec must be {d} nonnegative integers, got {kvec}")
    b1 = bases[0]

    P = [math.prod(b * b for b in bases[1:])]
    for i in range(1, d):
        P.append(b1**u * math.prod(b * b for j, b in enumerate(bases[1:], 1) if j != i))
    tau = [_mult_order(pow(b1, u, P[0]), P[0])]
    for i in range(1, d):
        tau.append(_mult_order(bases[i] ** 2 % P[i], P[i]))

    v1 = u * tau[0] * kvec[0]
    vj = [2 * tau[j] * kvec[j] for j in range(1, d)]
    M = b1**v1 * math.prod(b ** vj[j - 1] for j, b in enumerate(bases[1:], 1))
    L = M * math.prod(bases)
    N = L + M
    gamma_pow = 1 + Fraction(1, math.prod(bases))
    assert L * gamma_pow == N

    B = b1 ** (u - 1)
    F_ratio = Fraction(B + 1, B - 1)
    f_u = float(F_ratio) ** (d / (d - 1))
    base_minus = 1 - Fraction(1, B)  # 1 - b1^(1-u)
    base_plus = 1 + Fraction(1, B)

    beta1 = b1 ** (u * tau[0])
    deltas: List[Optional[int]] = []
    xi_floats: List[float] = []
    xi_pows: List[Fraction] = []  # xi_j^(d-1), always rational
    eq8: List[bool] = []
    xi_ge_1: List[bool] = []
    notes: List[str] = []
    n_delta0 = 0
    for j in range(1, d):
        bj = bases[j]
        betaj = bj ** (2 * tau[j])
        alpha = math.log(beta1) / math.log(betaj)
        fl = math.floor(kvec[0] * alpha)
        if kvec[j] == fl:
            delta = 0
        elif kvec[j] == fl + 1:
            delta = 1
        else:
            delta = None
            notes.append(
                f"k_{j + 1} = {kvec[j]} matches neither floor(k_1 log) = {fl} "
                f"nor floor + 1; no delta case applies"
            )
        deltas.append(delta)
        ratio = Fraction(bj ** (vj[j - 1] + 1), b1 ** (v1 + 1))
        if delta == 0:
            n_delta0 += 1
            xi_pow = Fraction(bj, b1) ** (d - 1) / F_ratio**d
            xi_floats.append((bj / b1) / f_u)
            left = xi_pow <= ratio ** (d - 1)
            right = ratio <= Fraction(bj, b1)
        elif delta == 1:
            xi_pow = Fraction(bj, b1) ** (d - 1)
            xi_floats.append(bj / b1)
            left = xi_pow <= ratio ** (d - 1)
            right = ratio ** (d - 1) <= Fraction(bj, b1) ** (d - 1) * F_ratio**d
        else:
            xi_pow = Fraction(0)
            xi_floats.append(float("nan"))
            left = right = False
        xi_pows.append(xi_pow)
        eq8.append(bool(left and right))
        xi_ge_1.append(bool(xi_pow >= 1))

    # prod xi_j = R / f(u)^n_delta0 with R rational
    R = Fraction(1)
    for j, delta in enumerate(deltas, 1):
        if delta is not None:
            R *= Fraction(bases[j], b1)
    exact = (d * n_delta0) % (d - 1) == 0 and all(dl is not None for dl in deltas)
    if exact:
        f_pow = F_ratio ** (d * n_delta0 // (d - 1))
        xi_prod = R / f_pow
        a_pow: Optional[Fraction] = base_minus**d * xi_prod * gamma_pow
        b_pow: Optional[Fraction] = (
            base_plus ** (2 * d) / base_minus**d * xi_prod * gamma_pow
        )
        a_pow_float, b_pow_float = float(a_pow), float(b_pow)
    else:
        a_pow = b_pow = None
        xi_prod_f = math.prod(xi_floats)
        a_pow_float = float(base_minus) ** d * xi_prod_f * float(gamma_pow)
        b_pow_float = (
            float(base_plus) ** (2 * d) / float(base_minus) ** d
            * xi_prod_f
            * float(gamma_pow)
        )
        notes.append("window powers evaluated in floating point")

    c = 2 * math.prod(Fraction(b - 1, b) for b in bases) / gamma_pow
    if exact:
        gap_ok = 2**d * (b_pow - a_pow) < c
    else:
        gap_ok = 2**d * (b_pow_float - a_pow_float) < float(c)

    separation = []
    for j in range(1, d):
        lhs = Fraction(1, b1 ** (v1 + 1)) - Fraction(1, b1 ** (v1 + u))
        rhs = Fraction(1, bases[j] ** (vj[j - 1] + 1)) + Fraction(
            1, bases[j] ** (vj[j - 1] + 2)
        )
        separation.append(bool(lhs > rhs))

    bound_degenerate = [
        math.log(f_u) / math.log(bases[j] ** (2 * tau[j])) >= 1 for j in range(1, d)
    ]
    if any(bound_degenerate):
        notes.append(
            "fractional-part interval covers [0,1) for some coordinate "
            "(log_beta_j f(u) >= 1); the k search is degenerate there"
        )

    return HaltonWitness(
        bases=bases,
        u=u,
        kvec=kvec,
        P=tuple(P),
        tau=tuple(tau),
        M=M,
        L=L,
        N=N,
        gamma_pow=gamma_pow,
        f_u=f_u,
        F_ratio=F_ratio,
        deltas=tuple(deltas),
        xi=tuple(xi_floats),
        eq8_ok=tuple(eq8),
        xi_ge_1=tuple(xi_ge_1),
        separation=tuple(separation),
        a_pow=a_pow,
        b_pow=b_pow,
        a_pow_float=a_pow_float,
        b_pow_float=b_pow_float,
        c=c,
        gap_ok=bool(gap_ok),
        exact=exact,
        notes=tuple(notes),
    )


@dataclass(frozen=True)
class KSearchHit:
    k1: int
    kvec: Tuple[int, ...]
    deltas: Tuple[int, ...]
    degenerate: bool


def halton_k_search(
    bases: Sequence[int], u: int, k1_max: int, guard: float = 1e-12
) -> List[KSearchHit]:
    """Scan k_1 = 0..k1_max for exponent vectors satisfying the window chain.

    For each j >= 2, the fractional part {k_1 log_beta_j beta_1} must land
    in [0, log_beta_j f(u)] (delta = 0, k_j = floor) or in
    [1 - log_beta_j f(u), 1) (delta = 1, k_j = floor + 1).  Candidates are
    prefiltered in floating point with a guard band, then re-validated
    through the exact integer inequality chain.
    """
    bases = _validate_bases(bases)
    if u < 2:
        raise ValueError(f"u must be >= 2, got {u}")
    d = len(bases)
    probe = halton_witness_params(bases, u, (0,) * d)
    tau = probe.tau
    beta1 = bases[0] ** (u * tau[0])
    betas = [bases[j] ** (2 * tau[j]) for j in range(1, d)]
    bounds = [math.log(probe.f_u) / math.log(bj) for bj in betas]
    degenerate = any(b >= 1 for b in bounds)

    hits: List[KSearchHit] = []
    for k1 in range(k1_max + 1):
        kvec = [k1]
        deltas = []
        ok = True
        for j in range(1, d):
            y = k1 * math.log(beta1) / math.log(betas[j - 1])
            fl = math.floor(y)
            frac = y - fl
            if frac <= bounds[j - 1] + guard:
                deltas.append(0)
                kvec.append(fl)
            elif frac >= 1 - bounds[j - 1] - guard:
                deltas.append(1)
                kvec.append(fl + 1)
            else:
                ok = False
                break
        if not ok:
            continue
        wit = halton_witness_params(bases, u, kvec)
        if all(wit.eq8_ok):
            hits.append(
                KSearchHit(
                    k1=k1,
                    kvec=tuple(kvec),
                    deltas=tuple(deltas),
                    degenerate=degenerate,
                )
            )
    return hits


def _halton_digit(n: int, b: int, i: int) -> int:
    return (n // b**i) % b


def halton_witness_verify(wit: HaltonWitness, budget: int = 2**22) -> WitnessReport:
    """Runs the full desk-scale verification of a Halton witness.

    Checks the digit pattern of the pairing modulus M in every base, the
    interval occupancy counts (prod b_j points of the first L, one of the
    next M), the qualifying-n count L prod (b_j - 1)/b_j, the per-pair
    coordinate-1 distance window, coordinate-1 dominance when the
    separation inequality holds, and the final counting criterion.
    """
    if wit.N > budget:
        raise BudgetExceededError(
            f"witness needs N = {wit.N} points, over the budget {budget}"
        )
    bases, u, d = wit.bases, wit.u, wit.d
    M, L, N = wit.M, wit.L, wit.N
    b1 = bases[0]
    v = wit.v

    # (i) digit patterns of M
    m_pattern = all(_halton_digit(M, b1, i) == 0 for i in range(v[0]))
    m_pattern &= _halton_digit(M, b1, v[0]) == 1
    m_pattern &= all(
        _halton_digit(M, b1, v[0] + t) == 0 for t in range(1, u)
    )
    for j in range(1, d):
        bj = bases[j]
        m_pattern &= all(_halton_digit(M, bj, i) == 0 for i in range(v[j]))
        m_pattern &= _halton_digit(M, bj, v[j]) == 1
        m_pattern &= _halton_digit(M, bj, v[j] + 1) == 0

    values = [
        tuple(radical_inverse(b, n) for b in bases) for n in range(N)
    ]

    # (ii) interval occupancy
    def interval_key(n: int) -> Tuple[int, ...]:
        return tuple(
            (values[n][j].numerator * bases[j] ** v[j]) // values[n][j].denominator
            for j in range(d)
        )

    counts_first: Dict[Tuple[int, ...], int] = {}
    for n in range(L):
        k = interval_key(n)
        counts_first[k] = counts_first.get(k, 0) + 1
    counts_second: Dict[Tuple[int, ...], int] = {}
    for n in range(L, N):
        k = interval_key(n)
        counts_second[k] = counts_second.get(k, 0) + 1
    n_intervals = M
    prod_b = math.prod(bases)
    occupancy_first = (
        len(counts_first) == n_intervals
        and all(cnt == prod_b for cnt in counts_first.values())
    )
    occupancy_second = (
        len(counts_second) == n_intervals
        and all(cnt == 1 for cnt in counts_second.values())
    )
    shift_invariance = all(interval_key(n) == interval_key(n + M) for n in range(L))

    # (iii) qualifying n and their distance windows
    def tdist(x: Fraction, y: Fraction) -> Fraction:
        delta = abs(x - y)
        return min(delta, 1 - delta)

    lo1 = (1 - Fraction(1, b1 ** (u - 1))) / b1 ** (v[0] + 1)
    hi1 = (1 + Fraction(1, b1 ** (u - 1))) / b1 ** (v[0] + 1)
    coord_windows = []
    for j in range(1, d):
        bj = bases[j]
        coord_windows.append(
            (
                Fraction(1, bj ** (v[j] + 1)) - Fraction(1, bj ** (v[j] + 2)),
                Fraction(1, bj ** (v[j] + 1)) + Fraction(1, bj ** (v[j] + 2)),
            )
        )

    qualifying = []
    for n in range(L):
        if _halton_digit(n, b1, v[0]) == b1 - 1:
            continue
        if any(
            _halton_digit(n, bases[j], v[j]) == bases[j] - 1 for j in range(1, d)
        ):
            continue
        qualifying.append(n)
    expected_qualifying = L * math.prod(b - 1 for b in bases) // prod_b
    qualifying_count_ok = len(qualifying) == expected_qualifying

    coord1_ok = True
    other_coords_ok = True
    sup_dists: List[Fraction] = []
    for n in qualifying:
        d1 = tdist(values[n][0], values[n + M][0])
        if not lo1 < d1 < hi1:
            coord1_ok = False
        sup = d1
        for j in range(1, d):
            dj = tdist(values[n][j], values[n + M][j])
            lo_j, hi_j = coord_windows[j - 1]
            if not lo_j < dj < hi_j:
                other_coords_ok = False
            if dj > sup:
                sup = dj
        sup_dists.append(sup)

    separation_all = all(wit.separation)
    if separation_all:
        coord1_dominant = all(
            tdist(values[n][0], values[n + M][0]) == sup
            for n, sup in zip(qualifying, sup_dists)
        )
    else:
        coord1_dominant = True  # not claimed at this u; see notes

    # final counting criterion over all consecutive-M pairs
    measured = 0
    for n in range(L):
        sup = max(tdist(values[n][j], values[n + M][j]) for j in range(d))
        if wit.exact:
            inside = sup**d * N > wit.a_pow and sup**d * N <= wit.b_pow
        else:
            sd = float(sup) ** d * N
            inside = wit.a_pow_float < sd <= wit.b_pow_float
        if inside:
            measured += 2
    required = wit.c * N
    count_ok = measured >= required

    structural = {
        "m_digit_pattern": bool(m_pattern),
        "occupancy_first_L": bool(occupancy_first),
        "occupancy_next_M": bool(occupancy_second),
        "shift_invariance": bool(shift_invariance),
        "qualifying_count_exact": bool(qualifying_count_ok),
        "coord1_window": bool(coord1_ok),
        "other_coord_windows": bool(other_coords_ok),
        "coord1_dominant": bool(coord1_dominant),
    }
    notes = list(wit.notes)
    if not separation_all:
        notes.append(
            "per-coordinate separation fails at this u; coordinate-1 "
            "dominance of the sup-norm is not claimed or checked"
        )
    if not wit.gap_ok:
        notes.append(
            "gap condition fails at this u (it requires u large enough, "
            "hence astronomically large N); structural checks stand alone"
        )
    invd = N ** (-1.0 / d)
    return WitnessReport(
        N=N,
        a=wit.a,
        b=wit.b,
        c=float(wit.c),
        lo=wit.a * invd,
        hi=wit.b * invd,
        measured_count=measured,
        required=float(required),
        qualifying_n=len(qualifying),
        gap_ok=wit.gap_ok,
        count_ok=bool(count_ok),
        verdict=bool(wit.gap_ok and count_ok),
        structural_checks=structural,
        notes=tuple(notes),
    )


# -- near-integer multiples (accumulation-point probe) ----------------------------


def near_integer_search(
    alphas: Sequence[float], eps: float, n_max: int, guard: float = 1e-12
) -> List[Tuple[int, Tuple[float, ...]]]:
    """All n <= n_max with every {n alpha_j} in (0, eps] or [1 - eps, 1).

    A constructive, desk-scale probe: hits are reported, density is never
    asserted.  Membership is decided in double precision with the stated
    guard band; exact zeros (rational alpha) are excluded by the open left
    endpoint.
    """
    if not 0 < eps < 0.5:
        raise ValueError(f"eps must lie in (0, 1/2), got {eps}")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    out = []
    for n in range(1, n_max + 1):
        fracs = tuple((n * a) % 1.0 for a in alphas)
        if all(
            (guard < f <= eps + guard) or (f >= 1 - eps - guard) for f in fracs
        ):
            out.append((n, fracs))
    return out
