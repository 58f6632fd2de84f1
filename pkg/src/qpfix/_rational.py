"""Exact rational parsing and canonical formatting."""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Union

Number = Union[Fraction, float]

#: Marker for an unbounded value (e.g. no finite relaxation coefficient exists).
INFINITE = math.inf


def parse_rational(value) -> Fraction:
    """Parse ``"p/q"``, an integer string, or a Python int into a Fraction.

    Floats are rejected: a binary float is not an exact rational input.
    """
    if isinstance(value, bool):
        raise ValueError(f"expected a rational, got {value!r}")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed rational {value!r}") from exc
    raise ValueError(f"expected a rational string or integer, got {value!r}")


def format_rational(value: Number) -> str:
    if value == INFINITE:
        return "inf"
    return str(Fraction(value))
