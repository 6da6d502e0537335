from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cenalg import FieldError, PrimeField, QQ, field_from_name


def test_gf_add():
    F = PrimeField(5)
    assert F.add(3, 4) == 2


def test_gf2_characteristic_two():
    F = PrimeField(2)
    assert F.add(1, 1) == 0


def test_rational_add():
    assert QQ.add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)


def test_gf_inverse():
    assert PrimeField(5).inv(3) == 2
    assert PrimeField(7).inv(1) == 1


def test_rational_inverse():
    assert QQ.inv(Fraction(-2, 3)) == Fraction(-3, 2)


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        PrimeField(5).inv(0)
    with pytest.raises(ZeroDivisionError):
        QQ.inv(Fraction(0))


def test_prime_validation():
    with pytest.raises(FieldError):
        PrimeField(4)
    with pytest.raises(FieldError):
        PrimeField(1)
    with pytest.raises(FieldError):
        PrimeField(2**31)  # over the bound even if prime-sized
    PrimeField(2**31 - 1)  # a Mersenne prime just under the bound


def test_mixed_operands_rejected():
    F = PrimeField(5)
    with pytest.raises(FieldError):
        F.add(1, Fraction(1, 2))
    with pytest.raises(FieldError):
        QQ.mul(Fraction(1), 2)


def test_element_canonicalization():
    F = PrimeField(7)
    assert F.element(-1) == 6
    assert F.element(14) == 0
    assert F.from_fraction(Fraction(1, 2)) == 4  # 2 * 4 = 8 = 1 mod 7
    with pytest.raises(FieldError):
        F.from_fraction(Fraction(1, 7))


def test_parse_format_idempotent():
    F = PrimeField(11)
    for s in ["0", "10", "-3", "25"]:
        v = F.parse(s)
        assert F.parse(F.format(v)) == v
    for s in ["3", "-3", "1/2", "-7/3", "6/4"]:
        v = QQ.parse(s)
        assert QQ.parse(QQ.format(v)) == v
        # canonical form round-trips to itself
        assert QQ.format(QQ.parse(QQ.format(v))) == QQ.format(v)


def test_parse_rejects_garbage():
    with pytest.raises(FieldError):
        PrimeField(5).parse("1/2")
    with pytest.raises(FieldError):
        QQ.parse("1.5")
    with pytest.raises(FieldError):
        QQ.parse("1/0")


def test_field_from_name():
    assert field_from_name("Q") == QQ
    assert field_from_name("Fp101") == PrimeField(101)
    with pytest.raises(FieldError):
        field_from_name("Fp4")
    with pytest.raises(FieldError):
        field_from_name("GF(5)")


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100), st.integers(0, 100), st.integers(0, 100))
def test_gf101_axioms(a, b, c):
    F = PrimeField(101)
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    if a != 0:
        assert F.mul(a, F.inv(a)) == 1


_small_fractions = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=20
)


@settings(max_examples=60, deadline=None)
@given(_small_fractions, _small_fractions, _small_fractions)
def test_rational_axioms(a, b, c):
    assert QQ.add(QQ.add(a, b), c) == QQ.add(a, QQ.add(b, c))
    assert QQ.mul(a, QQ.add(b, c)) == QQ.add(QQ.mul(a, b), QQ.mul(a, c))
    assert QQ.add(a, QQ.neg(a)) == 0
    if a != 0:
        assert QQ.mul(a, QQ.inv(a)) == 1
