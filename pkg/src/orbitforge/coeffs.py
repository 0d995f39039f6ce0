"""Coefficients of the form r*sqrt(s): exact carriers for critical points.

Critical vectors routinely have square-root coefficients (e.g. sqrt(1/7)).
Every quantity the criteria need (norms, Gram data, moment maps) is quadratic
in the coefficients, so a single radical per coefficient keeps the whole
pipeline rational: ``Coeff`` stores r * sqrt(s) with r rational and s a
squarefree positive integer.  Products fold radicands together and collapse
perfect squares; sums are only defined within one radicand, which is all the
criteria ever produce.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Union

CoeffLike = Union["Coeff", Fraction, int, str]


def _square_free_split(n: int) -> tuple[int, int]:
    """n = k^2 * m with m squarefree; returns (k, m). Requires n >= 1."""
    k, m, d = 1, 1, 2
    while d * d <= n:
        count = 0
        while n % d == 0:
            n //= d
            count += 1
        k *= d ** (count // 2)
        if count % 2:
            m *= d
        d += 1
    return k, m * n


class Coeff:
    """Exact number r * sqrt(s), r rational, s squarefree positive integer."""

    __slots__ = ("r", "s")

    def __init__(self, r: CoeffLike, s=1):
        if isinstance(r, Coeff):
            if s != 1:
                raise ValueError("cannot combine Coeff with a radicand")
            self.r, self.s = r.r, r.s
            return
        r = Fraction(r)
        s = Fraction(s)
        if s <= 0:
            raise ValueError("radicand must be positive")
        if r == 0:
            self.r, self.s = Fraction(0), 1
            return
        # sqrt(p/q) = sqrt(p*q)/q; then pull the square part out of p*q.
        k, m = _square_free_split(s.numerator * s.denominator)
        self.r = r * Fraction(k, s.denominator)
        self.s = m

    @classmethod
    def from_square(cls, square, sign: int = 1) -> "Coeff":
        """The number sign * sqrt(square), square a positive rational."""
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        return cls(sign, square)

    def is_zero(self) -> bool:
        return self.r == 0

    def is_rational(self) -> bool:
        return self.s == 1

    def rational(self) -> Fraction:
        if self.s != 1:
            raise ValueError("irrational value %r" % self)
        return self.r

    def square(self) -> Fraction:
        return self.r * self.r * self.s

    def __neg__(self):
        return Coeff(-self.r, self.s)

    def __add__(self, other):
        other = Coeff(other)
        if self.r == 0:
            return other
        if other.r == 0:
            return self
        if self.s != other.s:
            raise ValueError("cannot add mixed radicands sqrt(%d), sqrt(%d)"
                             % (self.s, other.s))
        return Coeff(self.r + other.r, self.s)

    def __sub__(self, other):
        return self + (-Coeff(other))

    def __mul__(self, other):
        other = Coeff(other)
        return Coeff(self.r * other.r, Fraction(self.s * other.s))

    __rmul__ = __mul__
    __radd__ = __add__

    def __eq__(self, other):
        other = Coeff(other)
        return self.r == other.r and self.s == other.s

    def __hash__(self):
        return hash((self.r, self.s))

    def __float__(self):
        return float(self.r) * float(self.s) ** 0.5

    def __repr__(self):
        if self.s == 1:
            return "Coeff(%s)" % self.r
        return "Coeff(%s*sqrt(%d))" % (self.r, self.s)
