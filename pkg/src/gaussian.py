# src/gaussian.py
"""
Exact Gaussian rational coefficients a + b·i, a, b in Q.

Arithmetic is done in sympy's field QQ_I. The wrapper adds what the algebra
code needs on top of the domain element: equality against plain integers,
a total sort key, compact rendering and a JSON form.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from sympy import Basic
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.polyerrors import CoercionFailed

from src.errors import ParseError

Scalar = Union[int, Fraction, complex, "GaussianRational"]


def _rational(value):
    if QQ.of_type(value):
        return value
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


class GaussianRational:
    __slots__ = ("z",)

    def __init__(self, re=0, im=0):
        self.z = QQ_I(_rational(re), _rational(im))

    @classmethod
    def _wrap(cls, z) -> "GaussianRational":
        obj = object.__new__(cls)
        obj.z = z
        return obj

    @classmethod
    def of(cls, value: Scalar) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if QQ_I.of_type(value):
            return cls._wrap(value)
        if isinstance(value, complex):
            return cls(value.real, value.imag)
        if isinstance(value, Basic):
            try:
                return cls._wrap(QQ_I.from_sympy(value))
            except CoercionFailed as exc:
                raise ParseError(f"{value} is not a Gaussian rational") from exc
        return cls(value)

    @property
    def re(self) -> Fraction:
        return _fraction(self.z.x)

    @property
    def im(self) -> Fraction:
        return _fraction(self.z.y)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other: Scalar) -> "GaussianRational":
        return GaussianRational._wrap(self.z + GaussianRational.of(other).z)

    __radd__ = __add__

    def __neg__(self) -> "GaussianRational":
        return GaussianRational._wrap(-self.z)

    def __sub__(self, other: Scalar) -> "GaussianRational":
        return GaussianRational._wrap(self.z - GaussianRational.of(other).z)

    def __rsub__(self, other: Scalar) -> "GaussianRational":
        return GaussianRational._wrap(GaussianRational.of(other).z - self.z)

    def __mul__(self, other: Scalar) -> "GaussianRational":
        return GaussianRational._wrap(self.z * GaussianRational.of(other).z)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "GaussianRational":
        return GaussianRational._wrap(self.z / GaussianRational.of(other).z)

    def inverse(self) -> "GaussianRational":
        return GaussianRational._wrap(QQ_I.one / self.z)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._wrap(self.z.new(self.z.x, -self.z.y))

    def __eq__(self, other) -> bool:
        try:
            other = GaussianRational.of(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.z == other.z

    def __hash__(self) -> int:
        return hash(self.z)

    def __bool__(self) -> bool:
        return bool(self.z)

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    @property
    def is_real(self) -> bool:
        return not self.z.y

    @property
    def is_integer(self) -> bool:
        return self.is_real and self.re.denominator == 1

    def sort_key(self):
        return (self.re, self.im)

    def to_sympy(self) -> Basic:
        return QQ_I.to_sympy(self.z)

    # rendering ------------------------------------------------------------

    def to_json(self) -> list:
        re, im = self.re, self.im
        return [re.numerator, re.denominator, im.numerator, im.denominator]

    @classmethod
    def from_json(cls, data) -> "GaussianRational":
        try:
            num, den, num_i, den_i = (int(x) for x in data)
            return cls(Fraction(num, den), Fraction(num_i, den_i))
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad coefficient {data!r}: {exc}") from exc

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self) -> str:
        re, im = self.re, self.im
        if not im:
            return str(re)
        if not re:
            return _imag_str(im)
        sign = "+" if im > 0 else "-"
        return f"({re}{sign}{_imag_str(abs(im))})"


def _imag_str(value: Fraction) -> str:
    if value == 1:
        return "i"
    if value == -1:
        return "-i"
    return f"{value}i"


ZERO = GaussianRational()
ONE = GaussianRational(1)
