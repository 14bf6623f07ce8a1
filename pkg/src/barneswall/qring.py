"""Exact arithmetic in Z[√2] and Q(√2).

Numbers are stored as a pair (a, b) meaning a + b√2.  Components are Python
ints when integral and :class:`fractions.Fraction` otherwise, so that every
value with integral components is a :class:`ZSqrt2` instance.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from numbers import Rational

__all__ = ["QSqrt2", "ZSqrt2", "SQRT2", "ZERO", "ONE", "qs", "parse", "sign"]


def _norm(x):
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Rational):
        x = Fraction(x.numerator, x.denominator)
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return _norm(Fraction(x))
    raise TypeError(f"not an exact rational: {x!r}")


def _make(a, b):
    if type(a) is int and type(b) is int:
        return ZSqrt2(a, b)
    return QSqrt2(a, b)


@total_ordering
class QSqrt2:
    """Element a + b√2 of Q(√2)."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = _norm(a)
        self.b = _norm(b)

    @classmethod
    def coerce(cls, x) -> QSqrt2:
        if isinstance(x, QSqrt2):
            return x
        if isinstance(x, str):
            return parse(x)
        x = _norm(x)
        return _make(x, 0)

    # ring structure

    def __add__(self, other):
        if not isinstance(other, QSqrt2):
            try:
                other = QSqrt2.coerce(other)
            except TypeError:
                return NotImplemented
        return _make(_norm(self.a + other.a), _norm(self.b + other.b))

    __radd__ = __add__

    def __neg__(self):
        return _make(-self.a, -self.b)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, QSqrt2):
            try:
                other = QSqrt2.coerce(other)
            except TypeError:
                return NotImplemented
        return _make(_norm(self.a - other.a), _norm(self.b - other.b))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if not isinstance(other, QSqrt2):
            try:
                other = QSqrt2.coerce(other)
            except TypeError:
                return NotImplemented
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        return _make(_norm(a1 * a2 + 2 * b1 * b2), _norm(a1 * b2 + a2 * b1))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, QSqrt2):
            try:
                other = QSqrt2.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.invert()

    def __rtruediv__(self, other):
        return QSqrt2.coerce(other) * self.invert()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.invert() ** (-k)
        result: QSqrt2 = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> QSqrt2:
        """Galois conjugate a - b√2."""
        return _make(self.a, -self.b)

    def field_norm(self):
        """x * conjugate(x) = a^2 - 2 b^2, an exact rational."""
        return _norm(self.a * self.a - 2 * self.b * self.b)

    def trace(self):
        return _norm(2 * self.a)

    def invert(self) -> QSqrt2:
        n = self.field_norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(√2)")
        return _make(_norm(Fraction(self.a) / n), _norm(Fraction(-self.b) / n))

    # predicates

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integral(self) -> bool:
        return type(self.a) is int and type(self.b) is int

    def is_unit(self) -> bool:
        """True for units of Z[√2] (integral with norm ±1)."""
        return self.is_integral() and abs(self.field_norm()) == 1

    def sign(self) -> int:
        return sign(self)

    def __bool__(self):
        return not self.is_zero()

    # comparison / hashing

    def __eq__(self, other):
        if isinstance(other, QSqrt2):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __lt__(self, other):
        if not isinstance(other, QSqrt2):
            try:
                other = QSqrt2.coerce(other)
            except TypeError:
                return NotImplemented
        return sign(self - other) < 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __float__(self):
        return float(self.a) + float(self.b) * 2**0.5

    def key(self):
        """Exact, hashable (a, b) encoding."""
        return (self.a, self.b)

    def __repr__(self):
        return f"{type(self).__name__}({self.a!s}, {self.b!s})"

    def __str__(self):
        return format_scalar(self)


class ZSqrt2(QSqrt2):
    """Element of the ring Z[√2]; both components are ints."""

    __slots__ = ()

    def __init__(self, a=0, b=0):
        a = _norm(a)
        b = _norm(b)
        if type(a) is not int or type(b) is not int:
            raise ValueError(f"ZSqrt2 needs integer components, got {a}, {b}")
        self.a = a
        self.b = b


ZERO = ZSqrt2(0, 0)
ONE = ZSqrt2(1, 0)
SQRT2 = ZSqrt2(0, 1)


def qs(a=0, b=0) -> QSqrt2:
    """Shorthand constructor returning ZSqrt2 where possible."""
    return _make(_norm(a), _norm(b))


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def sign(x) -> int:
    """Sign of a + b√2 under √2 -> +1.414..., by integer comparisons only."""
    x = QSqrt2.coerce(x)
    sa, sb = _sgn(x.a), _sgn(x.b)
    if sa == sb:
        return sa
    if sa == 0:
        return sb
    if sb == 0:
        return sa
    # opposite signs: compare a^2 with 2 b^2
    d = _sgn(x.a * x.a - 2 * x.b * x.b)
    return sa * d


def compare(x, y) -> int:
    """Three-way comparison of real values; use with functools.cmp_to_key."""
    return sign(QSqrt2.coerce(x) - QSqrt2.coerce(y))


# text form

def _fmt_rat(r) -> str:
    return str(r)


def format_scalar(x) -> str:
    """Canonical text form, e.g. ``3/2-1/2√2``, ``√2``, ``-2``."""
    x = QSqrt2.coerce(x)
    a, b = x.a, x.b
    if b == 0:
        return _fmt_rat(a)
    if b == 1:
        bs = "√2"
    elif b == -1:
        bs = "-√2"
    else:
        bs = f"{_fmt_rat(b)}√2"
    if a == 0:
        return bs
    if not bs.startswith("-"):
        bs = "+" + bs
    return f"{_fmt_rat(a)}{bs}"


_RAT = r"\d+(?:/\d+)?"
_TERM = re.compile(rf"([+-]?)({_RAT})?(√2|sqrt2|r2)?")


def parse(text: str) -> QSqrt2:
    """Inverse of :func:`format_scalar`; also accepts ``sqrt2`` for ``√2``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    pos = 0
    a = Fraction(0)
    b = Fraction(0)
    seen = False
    while pos < len(s):
        mt = _TERM.match(s, pos)
        if mt is None or mt.end() == pos or (mt.group(2) is None and mt.group(3) is None):
            raise ValueError(f"cannot parse scalar {text!r}")
        if seen and not mt.group(1):
            raise ValueError(f"cannot parse scalar {text!r}")
        sgn = -1 if mt.group(1) == "-" else 1
        coef = Fraction(mt.group(2)) if mt.group(2) else Fraction(1)
        if mt.group(3):
            b += sgn * coef
        else:
            a += sgn * coef
        seen = True
        pos = mt.end()
    return qs(a, b)
