"""
Exact rational scalars and their "p/q" text form.
"""

from fractions import Fraction
from numbers import Rational as RationalLike
from typing import Union

Rational = Fraction
RationalInput = Union[Fraction, int, str]


def as_rational(value: RationalInput) -> Fraction:
    """
    Coerce an int, Fraction or "p/q" string to a Fraction.

    Floats are refused: a float has already lost exactness.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, RationalLike):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or an integer literal."""
    cleaned = text.strip()
    if not cleaned:
        raise ValueError("empty rational literal")
    if "." in cleaned or "e" in cleaned.lower():
        raise ValueError(f"'{text}' is not an exact p/q literal")
    return Fraction(cleaned)


def format_rational(value: Fraction) -> str:
    """Render as "p/q" (always with a denominator)."""
    return f"{value.numerator}/{value.denominator}"


def to_decimal(value: Fraction, places: int = 6) -> str:
    """Fixed-point rendering, rounded half-even on the last place."""
    scaled = round(value * 10**places)
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(places + 1, "0")
    if places == 0:
        return sign + digits
    return f"{sign}{digits[:-places]}.{digits[-places:]}"
