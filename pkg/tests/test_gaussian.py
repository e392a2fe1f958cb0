import pickle
from fractions import Fraction

import pytest
from sympy import I, Rational, sqrt
from sympy.polys.domains import QQ, QQ_I

from src.errors import ParseError
from src.gaussian import ONE, ZERO, GaussianRational


def test_arithmetic_is_exact():
    z = GaussianRational(1, 2)
    assert z * z.conjugate() == GaussianRational(5)
    assert GaussianRational(Fraction(1, 3)) * 3 == ONE
    assert 2 - ONE == ONE
    assert not ZERO
    assert GaussianRational(0, 1)


def test_division_and_inverse():
    z = GaussianRational(1, 1)
    assert z.inverse() == GaussianRational(Fraction(1, 2), Fraction(-1, 2))
    assert z * z.inverse() == ONE
    assert GaussianRational(2, 4) / 2 == GaussianRational(1, 2)
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_compares_with_plain_numbers():
    assert GaussianRational(3) == 3
    assert GaussianRational(Fraction(1, 2)) == Fraction(1, 2)
    assert GaussianRational(1, 1) != 1
    assert GaussianRational(1, 1) != "1+i"
    assert hash(GaussianRational(2, 3)) == hash(GaussianRational(Fraction(4, 2), 3))


def test_coefficients_live_in_qq_i():
    z = GaussianRational(Fraction(2, 3), -1)
    assert QQ_I.of_type(z.z)
    assert z.z == QQ_I(QQ(2, 3), QQ(-1))
    assert GaussianRational.of(QQ_I(QQ(2, 3), QQ(-1))) == z
    assert z.re == Fraction(2, 3) and z.im == -1


def test_sympy_round_trip():
    z = GaussianRational(Fraction(1, 2), 3)
    assert z.to_sympy() == Rational(1, 2) + 3 * I
    assert GaussianRational.of(Rational(1, 2) + 3 * I) == z
    with pytest.raises(ParseError):
        GaussianRational.of(sqrt(2))


def test_integer_and_real_flags():
    assert GaussianRational(4).is_integer
    assert not GaussianRational(Fraction(1, 2)).is_integer
    assert not GaussianRational(1, 1).is_real


def test_rendering():
    assert str(GaussianRational(1, 2)) == "(1+2i)"
    assert str(GaussianRational(0, -1)) == "-i"
    assert str(GaussianRational(Fraction(-3, 4))) == "-3/4"


def test_json_and_pickle():
    z = GaussianRational(Fraction(2, 3), -5)
    assert z.to_json() == [2, 3, -5, 1]
    assert GaussianRational.from_json(z.to_json()) == z
    assert pickle.loads(pickle.dumps(z)) == z
    with pytest.raises(ParseError):
        GaussianRational.from_json([1, 0, 0, 1])
