"""Exact Gaussian rationals built on ``gmpy2.mpq``."""

from fractions import Fraction
import numbers

from gmpy2 import mpq

__all__ = ["GaussianRational", "Q", "as_gaussian", "parse_rational", "format_rational"]

_MPQ = type(mpq(0))


def Q(x, d=None):
    """Coerce ``x`` (int, Fraction, mpq or "p/q" string) to an mpq."""
    if d is not None:
        return mpq(x, d)
    if isinstance(x, _MPQ):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an exact rational")
    return mpq(x)


def parse_rational(text):
    s = text.strip()
    if not s:
        raise ValueError("empty rational")
    if "." in s or "e" in s.lower():
        raise ValueError(f"not an exact rational: {text!r}")
    if "/" in s:
        p, q = s.split("/", 1)
        p, q = int(p), int(q)
        if q == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return mpq(p, q)
    return mpq(int(s))


def format_rational(x):
    return str(mpq(x))


class GaussianRational:
    """An element ``re + i*im`` of Q(i).  Immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Q(re))
        object.__setattr__(self, "im", Q(im))

    @classmethod
    def _raw(cls, re, im):
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = as_gaussian(other)
        return GaussianRational._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = as_gaussian(other)
        return GaussianRational._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return as_gaussian(other) - self

    def __mul__(self, other):
        o = as_gaussian(other)
        a, b, c, d = self.re, self.im, o.re, o.im
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def abs2(self):
        return self.re * self.re + self.im * self.im

    def inverse(self):
        n = self.abs2()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational._raw(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * as_gaussian(other).inverse()

    def __rtruediv__(self, other):
        return as_gaussian(other) * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, numbers.Integral):
            raise TypeError("only integer powers")
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self):
        return GaussianRational._raw(self.re, -self.im)

    # predicates ---------------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self):
        return self.im == 0

    def __eq__(self, other):
        try:
            o = as_gaussian(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({format_rational(self.re)!r}, {format_rational(self.im)!r})"

    def __str__(self):
        if self.im == 0:
            return format_rational(self.re)
        if self.re == 0:
            return f"{format_rational(self.im)}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({format_rational(self.re)} {sign} {format_rational(abs(self.im))}*i)"


def as_gaussian(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, complex):
        raise TypeError("complex floats are not accepted")
    if isinstance(x, (numbers.Rational, _MPQ, str)):
        return GaussianRational._raw(Q(x), mpq(0))
    raise TypeError(f"cannot convert {type(x).__name__} to GaussianRational")


ZERO = GaussianRational(0, 0)
ONE = GaussianRational(1, 0)
I = GaussianRational(0, 1)
