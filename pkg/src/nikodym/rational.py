"""Exact rational scalars and their "p/q" wire format.

Every quantity on the exact path is a ``fractions.Fraction``: arbitrary
precision, always in lowest terms with positive denominator, no rounding.
Decimal strings parse exactly as fractions over powers of ten, so "0.1"
means 1/10, never the nearest binary float.
"""

from __future__ import annotations

from decimal import Decimal, localcontext
from fractions import Fraction

__all__ = ["parse_rational", "format_rational", "decimal_str"]


def parse_rational(value: str | int | Fraction) -> Fraction:
    """Parse "p/q", integer, or decimal text into an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ValueError("refusing to parse a float; pass a string or Fraction")
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {value!r}") from exc


def format_rational(x: Fraction) -> str:
    """Lowest-terms "p/q" string, denominator always explicit ("3/1" for 3)."""
    return f"{x.numerator}/{x.denominator}"


def decimal_str(x: Fraction, digits: int = 20) -> str:
    """Decimal rendering with `digits` significant digits.

    Annotation for human readers only; never feed the result back into
    exact computations.
    """
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(x.numerator) / Decimal(x.denominator)
    return str(d)
