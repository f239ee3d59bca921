from fractions import Fraction

import numpy as np
import pytest

from qmcpairs.fields import Field
from qmcpairs.genmat import GenMatrix, SeqDef
from qmcpairs.polys import poly_from_string
from qmcpairs.sequences import (
    DigitalSource,
    ExactPoint,
    HaltonSource,
    KroneckerSource,
    RandomSource,
    digital_numerators,
    digital_point,
    halton_point,
    kronecker_point,
    radical_inverse,
    truncate_point,
    vdc_point,
)

F2 = Field(2)


def P(text):
    return poly_from_string(F2, text)


def nieder_2d():
    return SeqDef(F2, (P("x"), P("x+1")))


# -- ExactPoint ---------------------------------------------------------------


def test_exact_point_values():
    p = ExactPoint((2,), ((1, 1, 0, 0),))
    assert p.numerator(0) == 12 and p.denominator(0) == 16
    assert p.value(0) == Fraction(3, 4)
    assert p.floats() == (0.75,)


def test_exact_point_validation():
    with pytest.raises(ValueError):
        ExactPoint((2,), ((2,),))
    with pytest.raises(ValueError):
        ExactPoint((1,), ((0,),))
    with pytest.raises(ValueError):
        ExactPoint((2, 3), ((0,),))


def test_truncate():
    p = ExactPoint((2,), ((1, 1, 1, 1),))
    assert truncate_point(p, 2).digits == ((1, 1),)
    assert truncate_point(p, 3).value(0) == Fraction(7, 8)  # 15/16 -> 7/8
    z = ExactPoint((2, 2), ((0, 0), (0, 0)))
    assert truncate_point(z, 1).values() == (0, 0)
    with pytest.raises(ValueError):
        truncate_point(p, 5)


# -- radical inverse ------------------------------------------------------------


def test_radical_inverse_examples():
    assert radical_inverse(2, 1) == Fraction(1, 2)
    assert radical_inverse(3, 5) == Fraction(7, 9)
    assert radical_inverse(2, 576) == Fraction(9, 1024)
    assert radical_inverse(2, 0) == 0


def test_radical_inverse_injective_and_in_range():
    for b in (2, 3, 5):
        vals = [radical_inverse(b, n) for n in range(b**6)]
        assert all(0 <= v < 1 for v in vals)
        assert len(set(vals)) == len(vals)


def test_radical_inverse_errors():
    with pytest.raises(ValueError):
        radical_inverse(1, 3)
    with pytest.raises(ValueError):
        radical_inverse(2, -1)


# -- halton --------------------------------------------------------------------


def test_halton_examples():
    assert halton_point((2, 3), 0).values() == (0, 0)
    assert halton_point((2, 3), 5).values() == (Fraction(5, 8), Fraction(7, 9))
    assert halton_point((2, 3, 5), 1).values() == (
        Fraction(1, 2),
        Fraction(1, 3),
        Fraction(1, 5),
    )


def test_halton_prec_padding_and_rejection():
    p = halton_point((2, 3), 5, prec=6)
    assert p.prec(0) == p.prec(1) == 6
    assert p.values() == (Fraction(5, 8), Fraction(7, 9))
    with pytest.raises(ValueError):
        halton_point((2, 3), 5, prec=1)  # would drop nonzero digits


def test_halton_coprime_bases_required():
    with pytest.raises(ValueError):
        halton_point((2, 4), 1)


# -- digital points ---------------------------------------------------------------


def test_digital_identity_is_vdc():
    mats = [GenMatrix.identity(F2, 10)]
    for n in range(2**10):
        dp = digital_point(F2, mats, n, 10)
        vp = vdc_point(n, 2, prec=10)
        assert dp.digits == vp.digits


def test_digital_point_examples():
    mats = [GenMatrix.identity(F2, 4)]
    assert digital_point(F2, mats, 3, 4).digits == ((1, 1, 0, 0),)
    sd = nieder_2d()
    nm = sd.matrices(4, 4)
    assert digital_point(F2, nm, 0, 4).values() == (0, 0)
    p1 = digital_point(F2, nm, 1, 4)
    # column 0 of the second matrix is (1,0,0,0): both coordinates are 1/2
    assert p1.values() == (Fraction(1, 2), Fraction(1, 2))


def test_digital_point_slice_too_narrow():
    mats = [GenMatrix.identity(F2, 4)]
    with pytest.raises(ValueError):
        digital_point(F2, mats, 16, 4)
    with pytest.raises(ValueError):
        digital_point(F2, mats, 1, 5)


def test_digital_numerators_fast_path_matches_scalar():
    sd = nieder_2d()
    mats = sd.matrices(8, 8)
    nums = digital_numerators(F2, mats, 0, 2**8, 8)
    for n in range(2**8):
        p = digital_point(F2, mats, n, 8)
        assert nums[n] == [p.numerator(0), p.numerator(1)]


def test_digital_numerators_extension_field_path():
    GF4 = Field(2, 2, [1, 1, 1])
    x = poly_from_string(GF4, "x")
    sd = SeqDef(GF4, (x,))
    mats = sd.matrices(4, 4)
    nums = digital_numerators(GF4, mats, 0, 16, 4)
    for n in range(16):
        p = digital_point(GF4, mats, n, 4)
        assert nums[n] == [p.numerator(0)]


# -- elementary interval equidistribution -------------------------------------------


@pytest.mark.parametrize("method", ["niederreiter", "cbc"])
def test_elementary_intervals_small(method):
    # every dyadic box of volume 2^-m gets exactly one truncated point per block
    sd = SeqDef(F2, (P("x"), P("x+1")), method=method)
    m = 6
    prec = m + 1
    mats = sd.matrices(prec, 2 * m)
    for s_block in (0, 1):
        nums = digital_numerators(F2, mats, s_block * 2**m, 2**m, prec)
        for v1 in range(m + 1):
            v2 = m - v1
            keys = {
                (a >> (prec - v1), b >> (prec - v2)) for a, b in nums
            }
            assert len(keys) == 2**m


# -- kronecker and sources -----------------------------------------------------------


def test_kronecker_examples():
    assert kronecker_point((0.5,), 4) == (0.0,)
    assert abs(kronecker_point((2**0.5,), 1)[0] - 0.41421356237309515) < 1e-12
    got = kronecker_point((2**0.5, 3**0.5), 2)
    assert abs(got[0] - (2 * 2**0.5) % 1.0) < 1e-12
    assert abs(got[1] - (2 * 3**0.5) % 1.0) < 1e-12


def test_sources_shapes_and_determinism():
    for src in (
        HaltonSource((2, 3)),
        KroneckerSource((0.4142135623730951, 0.7320508075688772)),
        RandomSource(2, seed=123),
        DigitalSource(F2, nieder_2d().matrices(12, 12), 12),
    ):
        a = src.float_points(0, 50)
        b = src.float_points(0, 50)
        assert a.shape == (50, 2)
        assert np.array_equal(a, b)
        assert np.all((0 <= a) & (a < 1))


def test_random_source_block_consistency():
    src = RandomSource(3, seed=7)
    whole = src.float_points(0, 100)
    tail = src.float_points(40, 60)
    assert np.array_equal(whole[40:], tail)
