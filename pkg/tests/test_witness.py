import math
from fractions import Fraction

import pytest

from qmcpairs.fields import Field
from qmcpairs.genmat import SeqDef
from qmcpairs.polys import poly_from_string
from qmcpairs.sequences import halton_point
from qmcpairs.paircorr import torus_dist
from qmcpairs.witness import (
    BudgetExceededError,
    InfeasibleWitnessError,
    digital_witness_params,
    digital_witness_verify,
    halton_k_search,
    halton_witness_params,
    halton_witness_verify,
    near_integer_search,
    prop1_check,
)

F2, F3 = Field(2), Field(3)


def sd2():
    return SeqDef(F2, (poly_from_string(F2, "x"), poly_from_string(F2, "x+1")))


def sd3():
    return SeqDef(F3, (poly_from_string(F3, "x"), poly_from_string(F3, "x+1")))


# -- the counting criterion ------------------------------------------------------


def test_prop1_examples():
    r = prop1_check(0.5, 0.6, 0.3, 1, count=300, N=1000)
    assert r.gap_ok and r.count_ok and r.verdict
    r = prop1_check(0.5, 0.6, 0.3, 2, count=300, N=1000)
    assert not r.gap_ok and not r.verdict  # 1.44 - 1.00 = 0.44 >= 0.3
    with pytest.raises(ValueError):
        prop1_check(0.5, 0.5, 0.3, 1, count=1, N=1)
    with pytest.raises(ValueError):
        prop1_check(0.0, 0.5, 0.3, 1, count=1, N=1)


def test_prop1_monotone():
    # enlarging count or shrinking c never flips a true verdict to false
    base = prop1_check(0.5, 0.6, 0.3, 1, count=300, N=1000)
    assert base.verdict
    for count in (301, 400, 10**6):
        assert prop1_check(0.5, 0.6, 0.3, 1, count=count, N=1000).verdict
    for c in (0.25, 0.21):
        r = prop1_check(0.5, 0.6, c, 1, count=300, N=1000)
        if r.gap_ok:
            assert r.verdict


# -- digital witness parameters -----------------------------------------------------


def test_digital_params_acceptance_instance():
    wit = digital_witness_params(sd2(), 8, Fraction(1, 100))
    assert (wit.v, wit.tau, wit.theta) == (1, (1, 1), 1)
    assert (wit.m, wit.M, wit.N) == (16, 65536, 131072)
    assert wit.w == 1
    assert wit.c == 0.5
    assert abs(wit.a - (2**0.5 / 2 - 0.01)) < 1e-15
    assert abs(wit.b - (2**0.5 / 2 + 0.01)) < 1e-15
    assert wit.eps_ok and wit.gap_ok and wit.feasible


def test_digital_params_u4_infeasible():
    # interval slack sqrt(2)/2^4 = 0.088 exceeds eps = 0.01
    wit = digital_witness_params(sd2(), 4, Fraction(1, 100))
    assert not wit.eps_ok
    assert not wit.feasible
    assert wit.gap_ok  # the gap condition itself is fine at this eps


def test_digital_params_f3():
    wit = digital_witness_params(sd3(), 3, Fraction(1, 100))
    assert wit.w == 2  # the natural bijection wraps at alpha = 2
    assert abs(wit.c - 1 / 3) < 1e-15
    assert wit.tau == (2, 1) and wit.theta == 2


def test_digital_params_validation():
    with pytest.raises(ValueError):
        digital_witness_params(sd2(), 3)  # 3 is not a power of 2
    with pytest.raises(ValueError):
        digital_witness_params(sd3(), 2)  # 2 is not a power of 3
    with pytest.raises(ValueError):
        digital_witness_params(SeqDef(F2, (poly_from_string(F2, "x"),)), 2)
    with pytest.raises(ValueError):
        digital_witness_params(sd2(), 8, Fraction(0))
    with pytest.raises(ValueError):
        digital_witness_params(sd2(), 8, Fraction(1))  # a would go negative


def test_digital_params_default_eps_feasible():
    wit = digital_witness_params(sd2(), 8)
    assert wit.feasible
    slack = 2**0.5 / 2**8
    assert slack < float(wit.eps)


def test_digital_verify_cbc_construction():
    # the witness machinery applies to the column-by-column matrices too
    sd = SeqDef(
        F2, (poly_from_string(F2, "x"), poly_from_string(F2, "x+1")), method="cbc"
    )
    wit = digital_witness_params(sd, 8, Fraction(1, 100))
    report = digital_witness_verify(wit, sd.matrices(17, 17))
    assert report.verdict
    assert report.structure_ok()


def test_digital_verify_guards():
    wit = digital_witness_params(sd2(), 8, Fraction(1, 100))
    with pytest.raises(BudgetExceededError):
        digital_witness_verify(wit, sd2().matrices(17, 17), budget=1000)
    bad = digital_witness_params(sd2(), 4, Fraction(1, 100))
    with pytest.raises(InfeasibleWitnessError):
        digital_witness_verify(bad, sd2().matrices(9, 9))
    with pytest.raises(ValueError):
        digital_witness_verify(wit, sd2().matrices(4, 4))  # slices too small


# -- Halton witness parameters --------------------------------------------------------


def test_halton_params_acceptance_instance():
    wit = halton_witness_params((2, 3), 2, (1, 1))
    assert wit.P == (9, 4)
    assert wit.tau == (3, 1)
    assert (wit.M, wit.L, wit.N) == (576, 3456, 4032)
    assert wit.gamma_pow == Fraction(7, 6)
    assert wit.f_u == 9.0
    assert wit.deltas == (0,)
    assert wit.xi == (pytest.approx(1 / 6),)
    assert wit.eq8_ok == (True,)
    assert wit.a_pow == Fraction(7, 144)
    assert wit.b_pow == Fraction(63, 16)
    assert wit.c == Fraction(4, 7)
    assert not wit.gap_ok  # u = 2 is far below the "u large enough" regime
    assert wit.separation == (False,)
    assert wit.exact


def test_halton_params_u4_orders():
    wit = halton_witness_params((2, 3), 4, (9, 17))
    assert wit.tau == (3, 2)  # ord(16 mod 9) and ord(9 mod 16)
    assert wit.deltas == (0,)
    assert wit.eq8_ok == (True,)


def test_halton_params_empty_exponents():
    wit = halton_witness_params((2, 3), 2, (0, 0))
    assert (wit.M, wit.L, wit.N) == (1, 6, 7)


def test_halton_params_validation():
    with pytest.raises(ValueError):
        halton_witness_params((3, 2), 2, (1, 1))  # first base not minimal
    with pytest.raises(ValueError):
        halton_witness_params((2, 4), 2, (1, 1))  # not coprime
    with pytest.raises(ValueError):
        halton_witness_params((2, 3), 1, (1, 1))
    with pytest.raises(ValueError):
        halton_witness_params((2, 3), 2, (1,))
    with pytest.raises(ValueError):
        halton_witness_params((2,), 2, (1,))


# -- k search ----------------------------------------------------------------------------


def test_k_search_u4_finds_nine():
    hits = halton_k_search((2, 3), 4, 12)
    by_k1 = {h.k1: h for h in hits}
    assert 9 in by_k1
    assert by_k1[9].kvec == (9, 17)
    assert by_k1[9].deltas == (0,)
    assert not by_k1[9].degenerate


def test_k_search_u4_small_range():
    hits = halton_k_search((2, 3), 4, 5)
    assert [h.k1 for h in hits] == [0, 1]  # 9 is outside the scanned range


def test_k_search_u2_degenerate():
    # f(2) = 9 = beta_2, so the fractional-part interval is all of [0, 1)
    hits = halton_k_search((2, 3), 2, 6)
    assert [h.k1 for h in hits] == list(range(7))
    assert all(h.degenerate for h in hits)


def test_k_search_revalidates_through_exact_chain():
    for h in halton_k_search((2, 3), 4, 20):
        wit = halton_witness_params((2, 3), 4, h.kvec)
        assert all(wit.eq8_ok)
        assert wit.deltas == h.deltas


# -- Halton witness verification -----------------------------------------------------------


def test_halton_verify_acceptance_instance():
    wit = halton_witness_params((2, 3), 2, (1, 1))
    report = halton_witness_verify(wit)
    assert report.N == 4032
    assert report.qualifying_n == 1152  # (1/2)(2/3) * 3456
    assert report.structure_ok()
    assert report.structural_checks["m_digit_pattern"]
    assert report.structural_checks["occupancy_first_L"]
    assert report.structural_checks["occupancy_next_M"]
    assert report.structural_checks["coord1_window"]
    assert not report.gap_ok
    assert not report.verdict


def test_halton_verify_n0_pair():
    # n = 0 pairs with n = M = 576: coordinate distances (9/1024, 32/729)
    x0 = halton_point((2, 3), 0)
    xM = halton_point((2, 3), 576)
    assert xM.value(0) == Fraction(9, 1024)
    d1 = torus_dist((x0.value(0),), (xM.value(0),))
    assert d1 == Fraction(9, 1024)
    assert Fraction(1, 256) < d1 < Fraction(3, 256)  # (2^-7 - 2^-8, 2^-7 + 2^-8)


def test_halton_verify_budget():
    wit = halton_witness_params((2, 3), 2, (3, 3))
    assert wit.N > 2**22
    with pytest.raises(BudgetExceededError):
        halton_witness_verify(wit)


# -- near-integer search --------------------------------------------------------------------


def test_near_integer_example():
    alpha = math.log(4096) / math.log(81)
    hits = near_integer_search([alpha], 0.05, 20)
    assert 9 in [n for n, _ in hits]
    n9 = dict(hits)[9]
    assert 0 < n9[0] <= 0.05 + 1e-12


def test_near_integer_rational_alpha_excluded():
    # {0.5 n} is exactly 0 or 0.5; neither is in (0, eps] u [1 - eps, 1)
    assert near_integer_search([0.5], 0.25, 50) == []


def test_near_integer_two_dims_nonempty():
    hits = near_integer_search([2**0.5, 3**0.5], 0.1, 1000)
    assert hits
    for n, fr in hits:
        for f in fr:
            assert (1e-12 < f <= 0.1 + 1e-12) or (f >= 0.9 - 1e-12)


def test_near_integer_validation():
    with pytest.raises(ValueError):
        near_integer_search([0.3], 0.6, 10)
    with pytest.raises(ValueError):
        near_integer_search([0.3], 0.1, 0)
