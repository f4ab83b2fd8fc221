"""Exact rational scalars and their on-disk string form.

All weights, distances and interval endpoints in this package are
``fractions.Fraction`` values; files store them as ``"p/q"`` strings
(plain ``"p"`` when the denominator is 1) so nothing is ever rounded.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to an exact Fraction.

    Floats are rejected: a float has already lost exactness before we
    see it, and every consumer of this package relies on exact equality.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected int, Fraction or 'p/q' string, got {value!r}")


def format_fraction(value: Fraction) -> str:
    """Render a Fraction as 'p' or 'p/q' for serialization."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
