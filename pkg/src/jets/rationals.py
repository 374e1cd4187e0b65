"""Exact rational scalars.

Coefficients are elements of sympy's ``QQ`` domain, which is backed by
gmpy2's ``mpq`` when gmpy2 is installed and by a pure-Python rational type
otherwise.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any

from sympy.polys.domains import QQ

# Element type of QQ; either gmpy2.mpq or PythonMPQ.
Rational = Any

ZERO = QQ.zero
ONE = QQ.one

_RATIONAL_TEXT = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def to_rational(value: Any) -> Rational:
    """Convert an int, Fraction, QQ element or ``"p/q"`` text to a QQ element.

    Raises:
        ValueError: text that is not an integer or a ratio of integers, or a
            zero denominator
        TypeError: floats and other inexact inputs
    """
    if QQ.of_type(value):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, str):
        match = _RATIONAL_TEXT.match(value)
        if not match:
            raise ValueError(f"not an exact rational: {value!r}")
        numerator = int(match.group(1))
        denominator = int(match.group(2)) if match.group(2) else 1
        if denominator == 0:
            raise ValueError(f"zero denominator: {value!r}")
        return QQ(numerator, denominator)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def numerator(value: Rational) -> int:
    return int(QQ.numer(value))


def denominator(value: Rational) -> int:
    return int(QQ.denom(value))


def format_rational(value: Rational) -> str:
    """Render as ``p`` or ``p/q`` in lowest terms."""
    num, den = numerator(value), denominator(value)
    return str(num) if den == 1 else f"{num}/{den}"


def rational_power(value: Rational, exponent: int) -> Rational:
    if exponent >= 0:
        return value**exponent
    return ONE / value ** (-exponent)
