"""Exact scalar arithmetic and the combinatorial primitives everything else is built from.

Rationals are plain :class:`fractions.Fraction` values; Python integers are
already arbitrary precision, so no wrapper type is needed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from numbers import Rational
from typing import Union

Scalar = Union[int, Fraction]

__all__ = [
    "Fraction",
    "Undefined",
    "is_undefined",
    "as_fraction",
    "pochhammer",
    "binomial",
    "factorial",
    "leading_limit",
]


@dataclass(frozen=True)
class Undefined:
    """In-band marker for a value that has a genuine pole or an indeterminate 0/0."""

    reason: str

    def __bool__(self) -> bool:
        return False


def is_undefined(value) -> bool:
    return isinstance(value, Undefined)


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def pochhammer(a: Scalar, k: int) -> Fraction:
    """Rising factorial a(a+1)...(a+k-1); equals 1 for k = 0."""
    if k < 0:
        raise ValueError("pochhammer requires k >= 0")
    a = as_fraction(a)
    if a.denominator == 1:
        start = a.numerator
        # a nonpositive integer start hits zero within k steps
        if start <= 0 < start + k:
            return Fraction(0)
        out = 1
        for t in range(k):
            out *= start + t
        return Fraction(out)
    out = Fraction(1)
    for t in range(k):
        out *= a + t
    return out


def binomial(n: int, k: int) -> Fraction:
    if n < 0:
        raise ValueError("binomial requires n >= 0")
    if k < 0 or k > n:
        return Fraction(0)
    return Fraction(comb(n, k))


def leading_limit(num: list[tuple[int, int]], den: list[tuple[int, int]]):
    """Limit as eps -> 0 of prod(c + m*eps) over ``num`` divided by the same over ``den``.

    Each factor is a pair ``(c, m)`` of integers.  Factors with ``c == 0`` must
    carry ``m != 0``.  Returns a Fraction, or :class:`Undefined` when the
    denominator vanishes to higher order than the numerator.
    """
    zn = zd = 0
    value = Fraction(1)
    for c, m in num:
        if c == 0:
            if m == 0:
                return Fraction(0)
            zn += 1
            value *= m
        else:
            value *= c
    for c, m in den:
        if c == 0:
            if m == 0:
                return Undefined("identically vanishing denominator factor")
            zd += 1
            value /= m
        else:
            value /= c
    if zn > zd:
        return Fraction(0)
    if zd > zn:
        return Undefined(f"pole of order {zd - zn}")
    return value
