"""Exact rational scalars and "p/q" serialization helpers.

All exact quantities in the package are `fractions.Fraction` values; this
module fixes the wire format (``"p/q"`` strings) and provides the few
numeric helpers (rational square roots, pi) that cannot stay in ``Q``.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

Rational = Fraction

#: Precision (bits after the binary point) of rational approximations of
#: irrational quantities (disk/ellipse slice bounds).
SQRT_PRECISION_BITS = 80

#: pi to well over 50 bits, as a rational.  Used by closed-form constants.
PI_RATIONAL = Fraction(
    3141592653589793238462643383279502884197,
    10**39,
)


def to_fraction(value) -> Fraction:
    """Coerce ints, floats, strings ("p/q" or decimal) and Fractions."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(value: Fraction) -> str:
    """Serialize as "p/q" (always with the slash, even for integers)."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


def rational_sqrt(value: Fraction, bits: int = SQRT_PRECISION_BITS) -> Fraction:
    """Rational approximation of sqrt(value), accurate to ~2^-bits.

    The result r satisfies |r - sqrt(value)| <= 2^(1-bits) * max(1, sqrt(value)).
    """
    value = Fraction(value)
    if value < 0:
        raise ValueError("square root of a negative rational")
    if value == 0:
        return Fraction(0)
    scale = 1 << bits
    n = value.numerator * scale * scale
    return Fraction(isqrt(n // value.denominator), scale)


def round_to_dyadic(x: float, bits: int = 26) -> Fraction:
    """Round a float to a rational with denominator 2^bits.

    Keeps integer sizes small in downstream exact arithmetic; the
    perturbation (<= 2^-27) is negligible against Monte Carlo noise.
    """
    scale = 1 << bits
    return Fraction(round(x * scale), scale)
