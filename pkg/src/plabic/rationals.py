"""Canonical parsing and formatting of exact rationals.

All quantities in this package are `fractions.Fraction`.  On the wire they
are strings in canonically reduced "p/q" form ("-3/4", "7"); decimals are
never produced.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .errors import ParseError

RatLike = Union[Fraction, int, str]


def rat(value: RatLike) -> Fraction:
    """Coerce an int, Fraction, or "p/q" string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational literal {value!r}: {exc}") from exc
    raise ParseError(f"not a rational: {value!r} (floats are rejected; pass a string)")


def fmt(value: Fraction) -> str:
    """Render a Fraction canonically reduced, e.g. Fraction(-6, 8) -> "-3/4"."""
    return str(value)


def fmt_vector(vec) -> list:
    return [fmt(c) for c in vec]
