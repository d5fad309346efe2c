"""Deterministic decimal rendering of exact-rational scores.

All score arithmetic in this package is done with ``fractions.Fraction``;
digits appear only at output time.  Two rendering modes are needed:

* ``truncate`` -- ratio-style report cells (two decimals, toward zero),
  so 7/6 renders "1.16", never "1.17".
* ``half_up`` -- table-style percentages and integer cells.
"""

from __future__ import annotations

from fractions import Fraction


def render_fraction(value: Fraction, digits: int, mode: str = "truncate") -> str:
    """Render ``value`` with a fixed number of decimal digits.

    ``mode`` is "truncate" (toward zero) or "half_up" (ties away from
    zero; all values in this package are non-negative).
    """
    scaled = Fraction(value) * 10**digits
    negative = scaled < 0
    scaled = abs(scaled)
    if mode == "truncate":
        q = scaled.numerator // scaled.denominator
    elif mode == "half_up":
        q = (scaled + Fraction(1, 2)).numerator // (scaled + Fraction(1, 2)).denominator
    else:
        raise ValueError(f"unknown rounding mode {mode!r}")
    sign = "-" if negative and q else ""
    if digits == 0:
        return f"{sign}{q}"
    return f"{sign}{q // 10**digits}.{q % 10**digits:0{digits}d}"


def render_score(value: Fraction) -> str:
    """Two-decimal truncated rendering used for metric report cells."""
    return render_fraction(value, 2, "truncate")


def render_percent(ratio: Fraction) -> str:
    """One-decimal percentage (half-up) of a 0..1 ratio."""
    return render_fraction(ratio * 100, 1, "half_up")


def render_int(value: Fraction) -> str:
    """Integer rendering with round-half-up, as in summary tables."""
    return render_fraction(value, 0, "half_up")
