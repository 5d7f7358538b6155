"""Exact rational helpers on top of :class:`fractions.Fraction`.

Every value in the library core is a ``Fraction``. Parsing accepts ``"p/q"``,
integer strings and finite decimal strings (``"0.4"`` becomes ``2/5``);
formatting always produces ``"p/q"`` or an integer string.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

__all__ = [
    "Q",
    "DenominatorOverflow",
    "as_q",
    "fmt_q",
    "check_size",
    "get_denominator_limit",
    "set_denominator_limit",
]

Q = Fraction
RationalLike = Union[Fraction, int, str]

_DEFAULT_LIMIT_BITS = 512
_limit_bits = _DEFAULT_LIMIT_BITS


class DenominatorOverflow(ArithmeticError):
    """A denominator grew past the configured bit limit."""


def get_denominator_limit() -> int:
    return _limit_bits


def set_denominator_limit(bits: int) -> int:
    """Set the denominator bit limit; returns the previous value."""
    global _limit_bits
    if bits < 1:
        raise ValueError("denominator limit must be a positive bit count")
    previous, _limit_bits = _limit_bits, int(bits)
    return previous


def check_size(q: Fraction) -> Fraction:
    if q.denominator.bit_length() > _limit_bits:
        raise DenominatorOverflow(
            f"denominator of {q.numerator}/{q.denominator} has "
            f"{q.denominator.bit_length()} bits (limit {_limit_bits})"
        )
    return q


def as_q(value: RationalLike) -> Fraction:
    """Convert ``value`` to an exact Fraction.

    Floats are rejected: their binary expansion is almost never the number
    the caller meant. Pass decimal strings instead.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational literal")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact rational literal: {value!r}") from exc
    if isinstance(value, _RationalABC):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def fmt_q(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
