"""Rational scalars and their text form.

Every scalar in the library is an exact :class:`fractions.Fraction`
(arbitrary precision, always in lowest terms, positive denominator).  The
interchange format writes rationals as ``"p/q"`` with q > 0, including the
denominator even when it is 1, so round-trips are bit-exact.
"""

from __future__ import annotations

import re
from fractions import Fraction

Rat = Fraction

_RAT_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


class ParseError(ValueError):
    """Malformed rational or record text."""


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` (or a bare integer ``"p"``) into a Fraction."""
    m = _RAT_RE.match(text.strip())
    if not m:
        raise ParseError(f"not a rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParseError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(value) -> str:
    """Canonical ``"p/q"`` form (q > 0, lowest terms, denominator always shown)."""
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"
