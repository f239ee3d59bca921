import pytest

from qmcpairs.fields import Field, is_prime

GF4 = Field(2, 2, [1, 1, 1])
GF8 = Field(2, 3, [1, 1, 0, 1])
GF9 = Field(3, 2, [1, 0, 1])  # x^2 + 1 is irreducible over GF(3)
SMALL_FIELDS = [Field(2), Field(3), Field(5), Field(7), GF4, GF8, GF9]


def test_prime_check():
    assert [n for n in range(2, 30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_construction_errors():
    with pytest.raises(ValueError):
        Field(4)
    with pytest.raises(ValueError):
        Field(2, 0)
    with pytest.raises(ValueError):
        Field(2, 2)  # extension without modulus
    with pytest.raises(ValueError):
        Field(2, 1, [1, 1])  # modulus for a prime field
    with pytest.raises(ValueError):
        Field(2, 2, [1, 0, 1])  # (x+1)^2 is reducible
    with pytest.raises(ValueError):
        Field(2, 2, [1, 1, 0])  # not monic / wrong degree


def test_basic_examples():
    F2, F3 = Field(2), Field(3)
    assert F2.add(1, 1) == 0
    assert F3.inv(2) == 2
    assert GF4.mul(2, 2) == 3  # x * x = x + 1 mod x^2+x+1


@pytest.mark.parametrize("F", SMALL_FIELDS, ids=lambda f: f"q{f.q}")
def test_field_axioms_exhaustive(F):
    q = F.q
    for a in range(q):
        assert F.add(a, 0) == a and F.mul(a, 1) == a
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        for b in range(q):
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
            assert F.sub(a, b) == F.add(a, F.neg(b))
            for c in range(q):
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
                assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
                assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


@pytest.mark.parametrize("F", SMALL_FIELDS, ids=lambda f: f"q{f.q}")
def test_frobenius(F):
    # (a + b)^u = a^u + b^u whenever u is a power of the characteristic
    for u in (F.p, F.p**2):
        for a in range(F.q):
            for b in range(F.q):
                assert F.pow(F.add(a, b), u) == F.add(F.pow(a, u), F.pow(b, u))


@pytest.mark.parametrize("F", SMALL_FIELDS, ids=lambda f: f"q{f.q}")
def test_digit_bijection(F):
    assert F.to_digit(0) == 0
    seen = set()
    for digit in range(F.q):
        elem = F.from_digit(digit)
        assert F.to_digit(elem) == digit
        seen.add(elem)
    assert len(seen) == F.q
    with pytest.raises(ValueError):
        F.from_digit(F.q)
    with pytest.raises(ValueError):
        F.from_digit(-1)


def test_digit_bijection_examples():
    assert Field(2).to_digit(1) == 1
    assert Field(5).to_digit(3) == 3
    # x+1 in GF(4) has coefficient vector (1, 1) -> 1 + 1*2 = 3
    assert GF4.to_digit(3) == 3


def test_inverse_of_zero():
    for F in SMALL_FIELDS:
        with pytest.raises(ZeroDivisionError):
            F.inv(0)


def test_element_range_check():
    F = Field(3)
    with pytest.raises(ValueError):
        F.add(1, 3)
    with pytest.raises(ValueError):
        F.mul(-1, 1)
