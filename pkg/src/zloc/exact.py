"""Exact scalars: rationals (``fractions.Fraction``) and Gaussian rationals.

Every invariant in the package is a Gaussian rational times an integer power
of 2*pi; nothing here ever touches floating point.
"""

import math
import re
from fractions import Fraction
from numbers import Rational as _RationalABC

from .errors import DivisionByZero, ParseError

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def rational_normalize(n, d=1):
    """Canonical reduced rational ``n/d`` with positive denominator."""
    if d == 0:
        raise DivisionByZero(f"zero denominator in {n}/{d}")
    return Fraction(n, d)


def as_rational(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def binomial(n, k):
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def parse_rational(text, field=None):
    """Parse ``"p/q"`` or ``"p"``; anything else is a ParseError."""
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"expected a rational string, got {text!r}", field=field)
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ParseError(f"malformed rational {text!r}", field=field)
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}", field=field)
    return Fraction(num, den)


def format_rational(q):
    q = as_rational(q)
    return f"{q.numerator}/{q.denominator}"


class GaussianRational:
    """Element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", as_rational(re))
        object.__setattr__(self, "im", as_rational(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x):
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("complex floats are not exact")
        return cls(as_rational(x), 0)

    @property
    def is_real(self):
        return self.im == 0

    def conj(self):
        return GaussianRational(self.re, -self.im)

    def norm(self):
        return self.re * self.re + self.im * self.im

    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise DivisionByZero("division by the zero Gaussian rational")
        p = self * o.conj()
        return GaussianRational(p.re / n, p.im / n)

    def __rtruediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o / self

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def to_json(self):
        return {"re": format_rational(self.re), "im": format_rational(self.im)}

    @classmethod
    def from_json(cls, obj, field=None):
        if isinstance(obj, dict):
            extra = set(obj) - {"re", "im"}
            if extra:
                raise ParseError(f"unexpected keys {sorted(extra)}", field=field)
            return cls(
                parse_rational(obj.get("re", "0"), field=field),
                parse_rational(obj.get("im", "0"), field=field),
            )
        return cls(parse_rational(obj, field=field))


I = GaussianRational(0, 1)


def imag_of_product(x, y):
    """Im(conj(x) * y), the exact stand-in for Im(exp(-i arg x) y) * |x|."""
    x = GaussianRational.coerce(x)
    y = GaussianRational.coerce(y)
    return x.re * y.im - x.im * y.re


def gaussian_arith(x, y=None, op="add"):
    x = GaussianRational.coerce(x)
    if op == "conj":
        return x.conj()
    y = GaussianRational.coerce(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "imag_of_product":
        return imag_of_product(x, y)
    raise ValueError(f"unknown op {op!r}")


def sign(q):
    q = as_rational(q)
    return (q > 0) - (q < 0)
