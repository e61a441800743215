"""Exact arithmetic in Q(sqrt 2)."""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import total_ordering

from .errors import DescriptorError


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@total_ordering
class QuadField:
    """``a + b*sqrt(2)`` with rational ``a``, ``b``."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", _frac(a))
        object.__setattr__(self, "b", _frac(b))

    def __setattr__(self, name, value):
        raise AttributeError("QuadField is immutable")

    @classmethod
    def coerce(cls, x) -> "QuadField":
        return x if isinstance(x, QuadField) else cls(x)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def sign(self) -> int:
        a, b = self.a, self.b
        sa, sb = (a > 0) - (a < 0), (b > 0) - (b < 0)
        if sa == 0 or sb == 0 or sa == sb:
            return sa or sb
        # opposite signs: compare a^2 with 2 b^2
        d = a * a - 2 * b * b
        return sa if d > 0 else sb

    def __add__(self, other):
        o = QuadField.coerce(other)
        return QuadField(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadField(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-QuadField.coerce(other))

    def __rsub__(self, other):
        return QuadField.coerce(other) - self

    def __mul__(self, other):
        o = QuadField.coerce(other)
        return QuadField(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadField":
        return QuadField(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - 2 * self.b * self.b

    def __truediv__(self, other):
        o = QuadField.coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 2)")
        p = self * o.conjugate()
        return QuadField(p.a / n, p.b / n)

    def __rtruediv__(self, other):
        return QuadField.coerce(other) / self

    def __eq__(self, other):
        try:
            o = QuadField.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __lt__(self, other):
        return (self - QuadField.coerce(other)).sign() < 0

    def __hash__(self):
        return hash((self.a, self.b))

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(2)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def floor(self) -> int:
        """Exact floor, starting from a float guess and correcting."""
        n = math.floor(float(self))
        while QuadField(n) > self:
            n -= 1
        while QuadField(n + 1) <= self:
            n += 1
        return n

    def text(self) -> str:
        if self.b == 0:
            return _ftext(self.a)
        if self.a == 0:
            return f"{_ftext(self.b)}*r2"
        sign = "+" if self.b > 0 else "-"
        return f"{_ftext(self.a)}{sign}{_ftext(abs(self.b))}*r2"

    __str__ = text

    def __repr__(self):
        return f"QuadField({self.text()})"

    @classmethod
    def parse(cls, text: str) -> "QuadField":
        return parse_quad(text)


def _ftext(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


_RAT = r"\d+(?:/\d+)?"
_TERM = re.compile(rf"([+-]?)\s*(?:({_RAT})\s*\*?\s*)?(r2|sqrt2)?")


def parse_quad(text: str) -> QuadField:
    """Parse ``a+b*r2`` style text: ``1``, ``-3/2``, ``r2``, ``2*r2``, ``1-1/3*r2``."""
    s = text.replace(" ", "")
    if not s:
        raise DescriptorError("empty number")
    a = b = Fraction(0)
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise DescriptorError(f"cannot parse {text!r}", pos)
        sign = -1 if m.group(1) == "-" else 1
        coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(3):
            b += sign * coef
        else:
            a += sign * coef
        pos = m.end()
        if pos < len(s) and s[pos] not in "+-":
            raise DescriptorError(f"unexpected {s[pos]!r} in {text!r}", pos)
    return QuadField(a, b)


R2 = QuadField(0, 1)


def sqrt2_convergents():
    """Continued-fraction convergents 1, 3/2, 7/5, 17/12, ... of sqrt 2."""
    p0, q0, p1, q1 = 1, 0, 1, 1
    while True:
        yield Fraction(p1, q1)
        p0, q0, p1, q1 = p1, q1, 2 * p1 + p0, 2 * q1 + q0
