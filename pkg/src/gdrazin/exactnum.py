"""Exact scalars: rationals and Gaussian rationals (the field Q(i)).

``BigRational`` is :class:`fractions.Fraction`, which already keeps the
canonical form (positive denominator, coprime parts). ``GaussianRational``
pairs two of them.

Literal grammar (no whitespace)::

    COMPLEX := RAT | [RAT] SIGN [RAT] "i" | [RAT] "i"
    RAT     := INT | INT "/" POSINT

A bare ``i`` has coefficient 1.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .errors import ParseError

BigRational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

try:
    Fraction(1, 1, _normalize=False)  # type: ignore[call-arg]

    def make_fraction(num: int, den: int) -> Fraction:
        """Build a Fraction from parts already known to be coprime, den > 0."""
        return Fraction(num, den, _normalize=False)  # type: ignore[call-arg]

except TypeError:  # pragma: no cover - Python >= 3.12
    _from_coprime = getattr(Fraction, "_from_coprime_ints", None)

    def make_fraction(num: int, den: int) -> Fraction:
        """Build a Fraction from parts already known to be coprime, den > 0."""
        if _from_coprime is not None:
            return _from_coprime(num, den)
        return Fraction(num, den)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class GaussianRational:
    """Immutable complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    re: Fraction
    im: Fraction

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, str):
            return gq_parse(x)
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact")
        return cls(x)

    # -- field operations -------------------------------------------------

    def __add__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return GaussianRational(a * c, ZERO)
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def inverse(self) -> GaussianRational:
        a, b = self.re, self.im
        if not b:
            if not a:
                raise ZeroDivisionError("GaussianRational division by zero")
            return GaussianRational(1 / a, ZERO)
        m = a * a + b * b
        return GaussianRational(a / m, -b / m)

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    # -- comparisons, hashing ---------------------------------------------

    def __eq__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    @property
    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        return f"GaussianRational('{gq_format(self)}')"

    def __str__(self):
        return gq_format(self)

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))


def _coerce_or_none(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Rational)):
        return GaussianRational(x)
    return None


def gq(re=0, im=0) -> GaussianRational:
    """Shorthand constructor; strings are parsed as literals."""
    if isinstance(re, str) and im == 0:
        return gq_parse(re)
    return GaussianRational(re, im)


# -- literal parsing / formatting ------------------------------------------


def _scan_rational(text: str, pos: int, signed: bool):
    """Read RAT starting at ``pos``; return (value or None, new position)."""
    n = len(text)
    start = pos
    neg = False
    if signed and pos < n and text[pos] == "-":
        neg = True
        pos += 1
    d0 = pos
    while pos < n and text[pos].isdigit():
        pos += 1
    if pos == d0:
        return None, start
    num = int(text[d0:pos])
    den = 1
    if pos < n and text[pos] == "/":
        pos += 1
        d1 = pos
        while pos < n and text[pos].isdigit():
            pos += 1
        if pos == d1:
            bad = text[pos] if pos < n else "end of input"
            raise ParseError(f"expected denominator digits, found {bad!r}", pos)
        den = int(text[d1:pos])
        if den == 0:
            raise ParseError("zero denominator", d1)
    return Fraction(-num if neg else num, den), pos


def gq_parse(text: str) -> GaussianRational:
    """Parse a scalar literal such as ``"3/4-1/2i"``, ``"2i"`` or ``"-i"``."""
    if not isinstance(text, str):
        raise ParseError(f"scalar literal must be a string, got {type(text).__name__}")
    if not text:
        raise ParseError("empty scalar literal", 0)
    n = len(text)
    for k, ch in enumerate(text):
        if not (ch.isascii() and (ch.isdigit() or ch in "+-/i")):
            raise ParseError(f"unexpected character {ch!r}", k)
    first, pos = _scan_rational(text, 0, signed=True)
    if pos == n:
        if first is None:
            raise ParseError("malformed literal", 0)
        return GaussianRational(first, ZERO)
    ch = text[pos]
    if ch == "i":
        if pos + 1 != n:
            raise ParseError(f"unexpected character {text[pos + 1]!r}", pos + 1)
        return GaussianRational(ZERO, ONE if first is None else first)
    if ch in "+-":
        sign = -1 if ch == "-" else 1
        pos += 1
        second, pos = _scan_rational(text, pos, signed=False)
        if pos >= n or text[pos] != "i":
            bad = repr(text[pos]) if pos < n else "end of input"
            raise ParseError(f"expected 'i', found {bad}", pos)
        if pos + 1 != n:
            raise ParseError(f"unexpected character {text[pos + 1]!r}", pos + 1)
        coeff = ONE if second is None else second
        return GaussianRational(ZERO if first is None else first, sign * coeff)
    raise ParseError(f"unexpected character {ch!r}", pos)


def _fmt_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def gq_format(z: GaussianRational) -> str:
    """Canonical literal: zero imaginary parts and ``/1`` are omitted."""
    re, im = z.re, z.im
    if not im:
        return _fmt_rational(re)
    if not re:
        return _fmt_rational(im) + "i"
    sign = "-" if im < 0 else "+"
    return f"{_fmt_rational(re)}{sign}{_fmt_rational(abs(im))}i"
