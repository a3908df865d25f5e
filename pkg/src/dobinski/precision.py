"""Working-precision plumbing around mpmath.

Exact rationals are the internal currency; they cross into floating point
through `to_mpf` (round to nearest) or `to_mpf_ceil` (round up, for error
bounds), both single correctly-rounded conversions at the current precision.
"""

from __future__ import annotations

from fractions import Fraction

from mpmath import mp
from mpmath.libmp import from_rational, round_ceiling, round_nearest

DEFAULT_BITS = 256

_MIN_BITS = 16


def resolve_bits(bits=None) -> int:
    if bits is None:
        return DEFAULT_BITS
    bits = int(bits)
    if bits < _MIN_BITS:
        raise ValueError(f"precision must be at least {_MIN_BITS} bits, got {bits}")
    return bits


def to_mpf(q):
    """Convert an exact rational to mpf at the current precision (nearest)."""
    q = Fraction(q)
    return mp.make_mpf(from_rational(q.numerator, q.denominator, mp.prec, round_nearest))


def to_mpf_ceil(q):
    """Convert a nonnegative rational bound to mpf, rounding upward."""
    q = Fraction(q)
    return mp.make_mpf(from_rational(q.numerator, q.denominator, mp.prec, round_ceiling))


def as_mpf(value):
    """Best-effort conversion of ints, Fractions, floats, strings, mpfs."""
    if isinstance(value, Fraction):
        return to_mpf(value)
    if isinstance(value, int):
        return mp.mpf(value)
    return mp.mpmathify(value)


def round_slack():
    """Multiplicative pad covering the few roundings in a scale-and-report step."""
    return 1 + mp.mpf(2) ** (6 - mp.prec)


def decimal_digits(bits: int) -> int:
    """Significant decimal digits carried by a `bits`-bit mantissa."""
    return max(8, int(bits * 0.30103))
