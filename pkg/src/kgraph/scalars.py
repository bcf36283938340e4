"""Exact Gaussian-rational scalars: a + b*i with a, b in Q.

All coefficient arithmetic in the algebra runs over this field, so equality
tests are exact decisions rather than numerical tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NonUnimodular


def _frac(x):
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


@dataclass(frozen=True)
class QQi:
    re: Fraction
    im: Fraction

    def __add__(self, other):
        return QQi(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return QQi(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __mul__(self, other):
        return QQi(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other):
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero scalar")
        return QQi(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self):
        return QQi(self.re, -self.im)

    def is_unimodular(self):
        return self.re * self.re + self.im * self.im == 1

    def __pow__(self, n):
        if n < 0:
            if not self.is_unimodular():
                raise NonUnimodular(f"negative power of non-unimodular scalar {self}")
            base, n = self.conjugate(), -n
        else:
            base = self
        out = ONE
        for _ in range(n):
            out = out * base
        return out

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            if self.im == 1:
                return "i"
            if self.im == -1:
                return "-i"
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        imtxt = "i" if mag == 1 else f"{mag}i"
        return f"{self.re}{sign}{imtxt}"


def qi(re=0, im=0):
    return QQi(_frac(re), _frac(im))


def as_scalar(c):
    if isinstance(c, QQi):
        return c
    return qi(c)


ZERO = qi(0)
ONE = qi(1)
I = qi(0, 1)
