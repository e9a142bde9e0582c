from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dgtilt.errors import DivisionByZero, FieldMismatch, ParseError
from dgtilt.scalars import GF, QQ, Mod, field_of, scalar_arith

PRIMES = [2, 3, 5, 7, 101]


def test_rational_parse_reduces():
    assert QQ.parse("-3/6") == Fraction(-1, 2)
    assert QQ.parse("+4") == 4


def test_prime_field_parse_and_format():
    F7 = GF(7)
    assert F7.parse("10") == Mod(3, 7)
    assert F7.parse("1/2") == Mod(4, 7)
    assert F7.parse("-1") == Mod(6, 7)
    assert F7.format(F7(-1)) == "6"


def test_rational_format():
    assert QQ.format(Fraction(-1, 2)) == "-1/2"
    assert QQ.format(Fraction(6, 3)) == "2"


@pytest.mark.parametrize("text", ["1.5", "abc", "", "1/", "--1", "1 2"])
def test_malformed_coefficients(text):
    with pytest.raises(ParseError):
        QQ.parse(text)


def test_zero_denominators():
    with pytest.raises(DivisionByZero):
        QQ.parse("1/0")
    with pytest.raises(DivisionByZero):
        GF(5).parse("1/5")
    with pytest.raises(DivisionByZero):
        GF(5)(0).inverse()


def test_inverse_mod_7():
    assert Mod(3, 7).inverse() == Mod(5, 7)


def test_non_prime_modulus_rejected():
    with pytest.raises(ValueError):
        GF(4)


def test_characteristics_do_not_mix():
    with pytest.raises(FieldMismatch):
        Mod(1, 3) + Mod(1, 5)
    with pytest.raises(FieldMismatch):
        QQ(Mod(1, 3))
    with pytest.raises(FieldMismatch):
        scalar_arith("add", Mod(1, 3), Fraction(1, 2))


def test_fields_compare_by_value():
    assert GF(5) == GF(5) and GF(5) != GF(7) and GF(2) != QQ
    assert field_of(Mod(2, 5)) == GF(5)
    assert field_of(Fraction(1, 3)) == QQ


def test_small_field_elements():
    assert GF(3).elements() == [Mod(0, 3), Mod(1, 3), Mod(2, 3)]
    assert GF(3).size == 3 and QQ.size is None


def test_scalar_arith_ops():
    assert scalar_arith("div", Fraction(1, 2), Fraction(1, 4)) == 2
    assert scalar_arith("inv", Mod(2, 5)) == Mod(3, 5)
    assert scalar_arith("neg", Mod(2, 5)) == Mod(3, 5)


residues = st.sampled_from(PRIMES).flatmap(
    lambda p: st.tuples(st.just(p), st.integers(0, p - 1), st.integers(0, p - 1),
                        st.integers(0, p - 1)))


@given(residues)
def test_prime_field_axioms(t):
    p, a, b, c = t
    F = GF(p)
    x, y, z = F(a), F(b), F(c)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x + (-x) == F.zero
    if x:
        assert x * x.inverse() == F.one
        assert (y / x) * x == y


fractions = st.fractions(max_denominator=10 ** 6)


@given(fractions)
def test_rational_format_parse_roundtrip(x):
    assert QQ.parse(QQ.format(x)) == x


@given(residues)
def test_prime_format_parse_roundtrip(t):
    p, a, _, _ = t
    F = GF(p)
    assert F.parse(F.format(F(a))) == F(a)


@given(fractions, fractions)
def test_rational_reduction_into_prime_field(x, y):
    F = GF(101)
    if x.denominator % 101 or y.denominator % 101:
        return
    assert F(x) + F(y) == F(x + y)
    assert F(x) * F(y) == F(x * y)
