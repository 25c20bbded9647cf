"""Exact numbers of the form ``c * sqrt(r)`` with ``c, r`` rational.

Enough arithmetic for partition density matrices: entries are square roots
of rational products, their pairwise products are rational again, and sums
only ever combine entries whose radicands agree up to a rational square.
"""

import math
from fractions import Fraction
from numbers import Rational


def _rational_sqrt(q):
    """``sqrt(q)`` as a Fraction when ``q`` is a rational square, else None."""
    if q < 0:
        return None
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def _squarefree_split(k, limit=10_000):
    """``(s, t)`` with ``k = s**2 * t``; small square factors only."""
    s = 1
    d = 2
    while d <= limit and d * d <= k:
        while k % (d * d) == 0:
            k //= d * d
            s *= d
        d += 1
    r = math.isqrt(k)
    if r * r == k:
        return s * r, 1
    return s, k


class Surd:
    __slots__ = ("coef", "rad")

    def __init__(self, coef, rad=1):
        coef = Fraction(coef)
        if rad == 1 or coef == 0:
            self.coef = coef
            self.rad = Fraction(1)
            return
        rad = Fraction(rad)
        if rad < 0:
            raise ValueError("negative radicand")
        if coef == 0 or rad == 0:
            coef, rad = Fraction(0), Fraction(1)
        else:
            # sqrt(n/d) = sqrt(n d) / d, then pull square factors out of n d
            s, t = _squarefree_split(rad.numerator * rad.denominator)
            coef = coef * Fraction(s, rad.denominator)
            rad = Fraction(t)
        self.coef = coef
        self.rad = rad

    @classmethod
    def sqrt(cls, q):
        return cls(1, Fraction(q))

    # -- views ------------------------------------------------------------

    def is_rational(self):
        return self.rad == 1

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.coef

    def square(self):
        return self.coef * self.coef * self.rad

    def __float__(self):
        return float(self.coef) * math.sqrt(self.rad)

    def __repr__(self):
        return f"Surd({self.coef}, {self.rad})"

    def __str__(self):
        if self.is_rational():
            return str(self.coef)
        sign = "-" if self.coef < 0 else ""
        return f"{sign}sqrt({self.square()})"

    def to_json(self):
        """``{"num", "den", "sqrt"}``: the value is ``num/den`` or ``sqrt(num/den)``."""
        if self.is_rational():
            return {"num": self.coef.numerator, "den": self.coef.denominator, "sqrt": False}
        sq = self.square()
        out = {"num": sq.numerator, "den": sq.denominator, "sqrt": True}
        if self.coef < 0:
            out["sign"] = -1
        return out

    @classmethod
    def from_json(cls, obj):
        q = Fraction(obj["num"], obj["den"])
        if not obj.get("sqrt"):
            return cls(q)
        return cls(obj.get("sign", 1), q)

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _lift(other):
        if isinstance(other, Surd):
            return other
        if isinstance(other, (Rational, int)):
            return Surd(other)
        return NotImplemented

    def _align(self, other):
        """Express ``other`` over ``self.rad``; None when the radicands are incommensurable."""
        if other.coef == 0:
            return Fraction(0)
        if self.rad == other.rad:
            return other.coef
        ratio = _rational_sqrt(other.rad / self.rad)
        if ratio is None:
            return None
        return other.coef * ratio

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if self.coef == 0:
            return other
        c = self._align(other)
        if c is None:
            raise ValueError(f"cannot add {self} and {other} exactly")
        return Surd(self.coef + c, self.rad)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.coef, self.rad)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if self.coef == 0 or other.coef == 0:
            return Surd(0)
        if self.rad == other.rad:
            return Surd(self.coef * other.coef * self.rad)
        return Surd(self.coef * other.coef, self.rad * other.rad)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if other.coef == 0:
            raise ZeroDivisionError("division by zero surd")
        # 1 / (c sqrt r) = sqrt(r) / (c r)
        return self * Surd(1 / (other.coef * other.rad), other.rad)

    def _sign(self):
        return (self.coef > 0) - (self.coef < 0)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        # the squarefree normal form is canonical
        return self.coef == other.coef and self.rad == other.rad

    def __hash__(self):
        if self.is_rational():
            return hash(self.coef)
        return hash((self._sign(), self.square()))

    def _cmp(self, other):
        other = self._lift(other)
        a, b = self._sign(), other._sign()
        if a != b:
            return (a > b) - (a < b)
        sa, sb = self.square(), other.square()
        mag = (sa > sb) - (sa < sb)
        return mag if a >= 0 else -mag

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return Surd(abs(self.coef), self.rad)

    def __bool__(self):
        return self.coef != 0
