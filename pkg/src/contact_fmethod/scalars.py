"""Exact arithmetic in the Gaussian rationals Q(i).

A :class:`GaussScalar` is stored as ``(re_num + im_num*i) / den`` with a
single positive common denominator, which keeps multiplication to one gcd
call instead of the four a pair of :class:`fractions.Fraction` would need.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from numbers import Rational as _RationalABC

__all__ = ["GaussScalar", "Rational", "gen_binomial", "parse_scalar", "I", "ZERO", "ONE"]

Rational = Fraction


class GaussScalar:
    __slots__ = ("_re", "_im", "_den")

    def __init__(self, re=0, im=0):
        re_ = Fraction(re)
        im_ = Fraction(im)
        den = re_.denominator * im_.denominator // gcd(re_.denominator, im_.denominator)
        self._set(re_.numerator * (den // re_.denominator),
                  im_.numerator * (den // im_.denominator), den)

    def _set(self, a, b, d):
        g = gcd(a, b, d)
        if g != 1:
            a //= g
            b //= g
            d //= g
        self._re = a
        self._im = b
        self._den = d

    @classmethod
    def _raw(cls, a, b, d):
        # d > 0 assumed
        obj = cls.__new__(cls)
        obj._set(a, b, d)
        return obj

    @classmethod
    def coerce(cls, value) -> "GaussScalar":
        if isinstance(value, GaussScalar):
            return value
        if isinstance(value, int):
            return cls._raw(value, 0, 1)
        if isinstance(value, _RationalABC):
            return cls._raw(value.numerator, 0, value.denominator)
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        if isinstance(value, str):
            return parse_scalar(value)
        raise TypeError(f"cannot convert {type(value).__name__} to GaussScalar")

    # -- accessors ---------------------------------------------------------
    @property
    def re(self) -> Fraction:
        return Fraction(self._re, self._den)

    @property
    def im(self) -> Fraction:
        return Fraction(self._im, self._den)

    def parts(self) -> tuple[int, int, int]:
        """Integer triple ``(re_num, im_num, den)`` in lowest terms."""
        return self._re, self._im, self._den

    def is_real(self) -> bool:
        return self._im == 0

    def conjugate(self) -> "GaussScalar":
        return GaussScalar._raw(self._re, -self._im, self._den)

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, GaussScalar):
            try:
                other = GaussScalar.coerce(other)
            except TypeError:
                return NotImplemented
        d1, d2 = self._den, other._den
        if d1 == d2:
            return GaussScalar._raw(self._re + other._re, self._im + other._im, d1)
        return GaussScalar._raw(self._re * d2 + other._re * d1,
                                self._im * d2 + other._im * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        obj = GaussScalar.__new__(GaussScalar)
        obj._re, obj._im, obj._den = -self._re, -self._im, self._den
        return obj

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, GaussScalar):
            try:
                other = GaussScalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return GaussScalar.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, GaussScalar):
            if isinstance(other, int):
                return GaussScalar._raw(self._re * other, self._im * other, self._den)
            try:
                other = GaussScalar.coerce(other)
            except TypeError:
                return NotImplemented
        a, b, d = self._re, self._im, self._den
        c, e, f = other._re, other._im, other._den
        if b == 0 and e == 0:
            return GaussScalar._raw(a * c, 0, d * f)
        return GaussScalar._raw(a * c - b * e, a * e + b * c, d * f)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussScalar.coerce(other)
        c, e, f = other._re, other._im, other._den
        norm = c * c + e * e
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        # (a+bi)/d / ((c+ei)/f) = f (a+bi)(c-ei) / (d (c^2+e^2))
        a, b, d = self._re, self._im, self._den
        return GaussScalar._raw((a * c + b * e) * f, (b * c - a * e) * f, d * norm)

    def __rtruediv__(self, other):
        return GaussScalar.coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (ONE / self) ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison / hashing ---------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, GaussScalar):
            try:
                other = GaussScalar.coerce(other)
            except TypeError:
                return NotImplemented
        return (self._re, self._im, self._den) == (other._re, other._im, other._den)

    def __hash__(self):
        if self._im == 0:
            return hash(Fraction(self._re, self._den))
        return hash((self._re, self._im, self._den))

    def __bool__(self):
        return self._re != 0 or self._im != 0

    # -- text --------------------------------------------------------------
    def __str__(self):
        re_, im_ = self.re, self.im
        if im_ == 0:
            return str(re_)
        if re_ == 0:
            return f"{im_}*i"
        sign = "+" if im_ > 0 else "-"
        return f"{re_}{sign}{abs(im_)}*i"

    def __repr__(self):
        return f"GaussScalar('{self}')"


ZERO = GaussScalar._raw(0, 0, 1)
ONE = GaussScalar._raw(1, 0, 1)
I = GaussScalar._raw(0, 1, 1)

_TERM = re.compile(r"[+-]?[^+-]+")
_NUMBER = re.compile(r"^\d+(\.\d*)?(/\d+)?$|^\.\d+$")


def parse_scalar(text: str) -> GaussScalar:
    """Parse strings such as ``"3/2"``, ``"-1/2*i"``, ``"1/3+2/5*i"``, ``"0.25-i"``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty scalar string")
    total_re = Fraction(0)
    total_im = Fraction(0)
    consumed = 0
    for match in _TERM.finditer(s):
        if match.start() != consumed:
            raise ValueError(f"malformed scalar {text!r}")
        consumed = match.end()
        term = match.group()
        sign = -1 if term.startswith("-") else 1
        body = term.lstrip("+-")
        imaginary = body.endswith("i")
        if imaginary:
            body = body[:-1]
            if body.endswith("*"):
                body = body[:-1]
            if body == "":
                body = "1"
        if not _NUMBER.match(body):
            raise ValueError(f"malformed scalar {text!r}")
        value = sign * Fraction(body)
        if imaginary:
            total_im += value
        else:
            total_re += value
    if consumed != len(s):
        raise ValueError(f"malformed scalar {text!r}")
    return GaussScalar(total_re, total_im)


def gen_binomial(t, k: int) -> Fraction:
    """Generalized binomial coefficient t(t-1)...(t-k+1)/k! for rational t."""
    if k < 0:
        raise ValueError("k must be non-negative")
    t = Fraction(t)
    num = Fraction(1)
    den = 1
    for j in range(k):
        num *= t - j
        den *= j + 1
    return num / den
