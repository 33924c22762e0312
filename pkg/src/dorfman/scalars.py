"""Exact scalars: rationals and Gaussian rationals.

Rational scalars are plain ``int`` / ``fractions.Fraction`` values. Gaussian
rationals with a nonzero imaginary part are :class:`GaussianRational`.
:func:`normalize` maps every scalar to its canonical representative, so two
equal scalars always compare and hash equal.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

RATIONAL = "rational"
GAUSSIAN = "gaussian-rational"
FIELDS = (RATIONAL, GAUSSIAN)


class GaussianRational:
    """An element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _rat(re)
        self.im = _rat(im)

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_scalar(self)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, Rational):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return normalize(GaussianRational(self.re + other.re, self.im + other.im))
        if isinstance(other, Rational):
            return normalize(GaussianRational(self.re + other, self.im))
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            return normalize(GaussianRational(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re))
        if isinstance(other, Rational):
            return normalize(GaussianRational(self.re * other, self.im * other))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * inverse(other)

    def __rtruediv__(self, other):
        return other * inverse(self)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)


Scalar = Union[int, Fraction, GaussianRational]



def _rat(x):
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    if isinstance(x, Rational):
        return _rat(Fraction(x))
    raise TypeError(f"not an exact rational: {x!r}")


I = GaussianRational(0, 1)


def normalize(c):
    """Return the canonical representative of the scalar ``c``."""
    if isinstance(c, GaussianRational):
        if c.im == 0:
            return c.re
        return c
    return _rat(c)


def inverse(c):
    """Exact multiplicative inverse; raises ``ZeroDivisionError`` on zero."""
    if isinstance(c, GaussianRational):
        n = c.re * c.re + c.im * c.im
        return normalize(GaussianRational(Fraction(c.re) / n, Fraction(-c.im) / n))
    if c == 0:
        raise ZeroDivisionError("inverse of zero")
    return _rat(Fraction(1) / c)


def div(a, b):
    return normalize(a * inverse(b))


def conjugate(c):
    if isinstance(c, GaussianRational):
        return c.conjugate()
    return c


def in_field(c, field: str) -> bool:
    if field == GAUSSIAN:
        return True
    return not isinstance(c, GaussianRational)


def format_rational(q) -> str:
    q = _rat(q)
    if isinstance(q, int):
        return str(q)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(c) -> str:
    """Render a scalar in the polynomial expression grammar.

    Rationals print as ``p`` or ``p/q``; non-real values print as
    ``a + b*i`` (without parentheses; callers add them when needed).
    """
    c = normalize(c)
    if not isinstance(c, GaussianRational):
        return format_rational(c)
    if c.im == 1:
        imag = "i"
    elif c.im == -1:
        imag = "-i"
    else:
        imag = f"{format_rational(c.im)}*i"
    if c.re == 0:
        return imag
    if imag.startswith("-"):
        return f"{format_rational(c.re)} - {imag[1:]}"
    return f"{format_rational(c.re)} + {imag}"
