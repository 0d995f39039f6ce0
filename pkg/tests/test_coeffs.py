"""Arithmetic of r*sqrt(s) coefficients."""

from fractions import Fraction

import pytest

from orbitforge.coeffs import Coeff, _square_free_split


def test_square_free_split():
    assert _square_free_split(1) == (1, 1)
    assert _square_free_split(12) == (2, 3)
    assert _square_free_split(49) == (7, 1)
    assert _square_free_split(360) == (6, 10)


def test_normalization():
    assert Coeff(1, 8) == Coeff(2, 2)                   # sqrt(8) = 2 sqrt(2)
    assert Coeff(1, Fraction(1, 2)) == Coeff(Fraction(1, 2), 2)
    assert Coeff(0, 7) == Coeff(0)
    assert Coeff(3).is_rational() and Coeff(3).rational() == 3
    with pytest.raises(ValueError):
        Coeff(1, -2)


def test_from_square_round_trip():
    c = Coeff.from_square(Fraction(1, 7))
    assert c.square() == Fraction(1, 7)
    assert float(c) == pytest.approx(1 / 7 ** 0.5)
    d = Coeff.from_square(Fraction(9, 4), -1)
    assert d == Coeff(Fraction(-3, 2))
    with pytest.raises(ValueError):
        Coeff.from_square(Fraction(1, 2), 2)


def test_addition_within_one_radicand():
    a, b = Coeff(1, 3), Coeff(2, 3)
    assert a + b == Coeff(3, 3)
    assert a - b == Coeff(-1, 3)
    assert a + 0 == a and 0 + a == a
    with pytest.raises(ValueError):
        a + Coeff(1, 2)


def test_multiplication_folds_radicands():
    assert Coeff(1, 2) * Coeff(1, 2) == Coeff(2)
    assert Coeff(1, 2) * Coeff(1, 3) == Coeff(1, 6)
    assert Coeff(1, 6) * Coeff(1, 10) == Coeff(2, 15)
    assert Fraction(1, 2) * Coeff(4, 5) == Coeff(2, 5)


def test_irrational_guard():
    with pytest.raises(ValueError):
        Coeff(1, 2).rational()


def test_equality_and_hash():
    assert Coeff(2, 2) == Coeff(1, 8)
    assert hash(Coeff(2, 2)) == hash(Coeff(1, 8))
    assert Coeff(0) == 0
    assert Coeff(1, 2) != Coeff(1, 3)
