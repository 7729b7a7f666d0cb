"""Exact integer and rational arithmetic.

Integers are plain Python ``int`` (arbitrary precision).  Rationals are
:class:`fractions.Fraction`, which is always stored reduced with a positive
denominator, and zero is ``0/1``.  The helpers below add the pieces the rest
of the package relies on: a canonical ``p/q`` text form, a parser that
reports where malformed input goes wrong, and an audit hook that checks the
reduced-form invariants.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Integer = int
Rational = Fraction

__all__ = [
    "Integer",
    "Rational",
    "RationalParseError",
    "DivisionByZero",
    "rat",
    "rat_add",
    "rat_sub",
    "rat_mul",
    "rat_div",
    "rat_neg",
    "rat_cmp",
    "rat_parse",
    "rat_format",
    "rat_approx",
    "audit",
    "enable_audit",
]

# Checked by operations in this module when enabled (see enable_audit).
_AUDIT = False


class DivisionByZero(ZeroDivisionError):
    """Raised by :func:`rat_div` when the divisor is zero."""


class RationalParseError(ValueError):
    """Malformed rational text.  ``offset`` is the index of the bad character."""

    def __init__(self, text: str, offset: int, reason: str):
        self.text = text
        self.offset = offset
        self.reason = reason
        super().__init__(f"{reason} at offset {offset} in {text!r}")


def enable_audit(flag: bool = True) -> None:
    """Turn the reduced-form audit on or off for the operations below."""
    global _AUDIT
    _AUDIT = flag


def audit(r: Fraction) -> Fraction:
    """Check the stored-form invariants of ``r`` and return it unchanged."""
    if not isinstance(r, Fraction):
        raise TypeError(f"expected Fraction, got {type(r).__name__}")
    p, q = r.numerator, r.denominator
    if q <= 0:
        raise AssertionError(f"non-positive denominator in {p}/{q}")
    if gcd(p, q) != 1:
        raise AssertionError(f"unreduced rational {p}/{q}")
    if p == 0 and q != 1:
        raise AssertionError(f"non-canonical zero 0/{q}")
    return r


def _checked(r: Fraction) -> Fraction:
    return audit(r) if _AUDIT else r


def rat(p: int | Fraction | str, q: int = 1) -> Fraction:
    """Build a rational from an int pair, a Fraction, or canonical text."""
    if isinstance(p, str):
        return rat_parse(p)
    if q == 0:
        raise DivisionByZero(f"zero denominator in {p}/0")
    return _checked(Fraction(p, q))


def rat_add(a: Fraction, b: Fraction) -> Fraction:
    return _checked(a + b)


def rat_sub(a: Fraction, b: Fraction) -> Fraction:
    return _checked(a - b)


def rat_mul(a: Fraction, b: Fraction) -> Fraction:
    return _checked(a * b)


def rat_div(a: Fraction, b: Fraction) -> Fraction:
    if b == 0:
        raise DivisionByZero(f"division of {rat_format(Fraction(a))} by zero")
    return _checked(Fraction(a) / b)


def rat_neg(a: Fraction) -> Fraction:
    return _checked(-a)


def rat_cmp(a: Fraction, b: Fraction) -> int:
    """Three-way comparison by cross-multiplication: -1, 0 or 1."""
    a, b = Fraction(a), Fraction(b)
    lhs = a.numerator * b.denominator
    rhs = b.numerator * a.denominator
    return (lhs > rhs) - (lhs < rhs)


_MINUS_SIGNS = ("-", "−")


def rat_parse(text: str) -> Fraction:
    """Parse ``[-]digits[/digits]``.

    The typographic minus sign U+2212 is accepted as well as ASCII ``-``.
    Whitespace is not allowed anywhere.
    """
    if not isinstance(text, str):
        raise TypeError("rat_parse expects text")
    i = 0
    sign = 1
    if text[:1] in _MINUS_SIGNS:
        sign = -1
        i = 1
    start = i
    while i < len(text) and text[i].isascii() and text[i].isdigit():
        i += 1
    if i == start:
        raise RationalParseError(text, i, "expected digit")
    num = int(text[start:i])
    den = 1
    if i < len(text):
        if text[i] != "/":
            raise RationalParseError(text, i, "unexpected character")
        i += 1
        start = i
        while i < len(text) and text[i].isascii() and text[i].isdigit():
            i += 1
        if i == start:
            raise RationalParseError(text, i, "expected digit")
        if i < len(text):
            raise RationalParseError(text, i, "unexpected character")
        den = int(text[start:i])
        if den == 0:
            raise RationalParseError(text, start, "zero denominator")
    return _checked(Fraction(sign * num, den))


def rat_format(r: Fraction | int) -> str:
    """Canonical text: ``p/q``, or just ``p`` when the denominator is 1."""
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def rat_approx(r: Fraction | int, digits: int = 17) -> str:
    """Display-only decimal approximation with ``digits`` significant digits."""
    r = Fraction(r)
    if r == 0:
        return "0"
    p, q = abs(r.numerator), r.denominator
    # scale so the integer part has exactly `digits` digits
    exp10 = len(str(p)) - len(str(q))
    if p * 10 ** max(0, -exp10) < q * 10 ** max(0, exp10):
        exp10 -= 1
    shift = digits - 1 - exp10
    if shift >= 0:
        mant = (p * 10**shift + q // 2) // q
    else:
        d = q * 10 ** (-shift)
        mant = (p + d // 2) // d
    if len(str(mant)) > digits:
        mant //= 10
        exp10 += 1
    s = str(mant)
    body = s[0] + ("." + s[1:].rstrip("0") if s[1:].rstrip("0") else "")
    out = f"{body}e{exp10:+d}" if exp10 else body
    return ("-" if r < 0 else "") + out
