from fractions import Fraction

import pytest

from cikit.fields import QQ, GF, Field, FieldError


def test_rationals_arithmetic():
    assert QQ.add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    assert QQ.inv(Fraction(2, 3)) == Fraction(3, 2)
    assert QQ.of_fraction(3, 2) == Fraction(3, 2)
    assert QQ.is_rationals


def test_prime_field_arithmetic():
    F = GF(5)
    assert F.add(3, 4) == 2
    assert F.mul(3, 4) == 2
    assert F.inv(2) == 3
    assert F.of_fraction(1, 2) == 3
    assert F.of_int(-1) == 4
    assert F.characteristic == 5


def test_char_two_rejected():
    with pytest.raises(FieldError):
        GF(2)


def test_non_prime_rejected():
    with pytest.raises(FieldError):
        GF(9)
    with pytest.raises(FieldError):
        GF(1)


def test_parse():
    assert Field.parse("Q") == QQ
    assert Field.parse("QQ") == QQ
    assert Field.parse("F7") == GF(7)
    assert Field.parse("Fp 11") == GF(11)
    assert Field.parse("GF(13)") == GF(13)
    with pytest.raises(FieldError):
        Field.parse("R")


def test_parse_scalar():
    assert QQ.parse_scalar("3/2") == Fraction(3, 2)
    assert GF(7).parse_scalar("3/2") == (3 * 4) % 7
    assert QQ.parse_scalar("-5") == Fraction(-5)
