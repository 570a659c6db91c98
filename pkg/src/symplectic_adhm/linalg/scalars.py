"""Scalar fields: exact rationals, exact Gaussian rationals and complex doubles."""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from numbers import Rational


class FieldKind(enum.Enum):
    RATIONAL = "rational"
    GAUSSIAN_RATIONAL = "gaussian_rational"
    COMPLEX = "complex64"

    @property
    def exact(self) -> bool:
        return self is not FieldKind.COMPLEX

    @classmethod
    def parse(cls, name: str) -> "FieldKind":
        aliases = {"complex": cls.COMPLEX, "complex128": cls.COMPLEX, "float": cls.COMPLEX}
        if name in aliases:
            return aliases[name]
        return cls(name)


class GaussianRational:
    """An element ``re + im*i`` of Q(i), with both parts stored as Fractions."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return GaussianRational(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * o.conjugate()
        return GaussianRational(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return GaussianRational(1) / (self ** (-k))
        out = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return math.hypot(float(self.re), float(self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def to_exact(value, kind: FieldKind = FieldKind.RATIONAL):
    """Coerce ``value`` into the exact scalar type of ``kind``."""
    if kind is FieldKind.GAUSSIAN_RATIONAL:
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (list, tuple)) and len(value) == 2:
            return GaussianRational(parse_rational(value[0]), parse_rational(value[1]))
        return GaussianRational(parse_rational(value), 0)
    if isinstance(value, GaussianRational):
        if value.im != 0:
            raise ValueError(f"{value} is not rational")
        return value.re
    return parse_rational(value)


def parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, float):
        if not value.is_integer():
            raise TypeError(f"refusing to read float {value!r} as an exact rational")
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def rational_sqrt(q: Fraction) -> Fraction | None:
    """The nonnegative rational square root of ``q`` if it exists."""
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def gaussian_sqrt(z: GaussianRational) -> GaussianRational | None:
    """A square root of ``z`` inside Q(i), or None when it lies outside."""
    s = rational_sqrt(z.norm())
    if s is None:
        return None
    x = rational_sqrt((s + z.re) / 2)
    y = rational_sqrt((s - z.re) / 2)
    if x is None or y is None:
        return None
    if z.im < 0:
        y = -y
    root = GaussianRational(x, y)
    return root if root * root == z else None


def exact_sqrt(value):
    """Square root inside the scalar's own exact field, or None."""
    if isinstance(value, GaussianRational):
        return gaussian_sqrt(value)
    return rational_sqrt(Fraction(value))


def scalar_to_complex(value) -> complex:
    return complex(value) if not isinstance(value, Fraction) else complex(float(value))
