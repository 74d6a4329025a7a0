"""Log-scale scalars of the max-plus semifield over the rationals.

A value ``a`` stands for the positive real ``e**a``; tropical addition is
``max`` and tropical multiplication is ordinary addition.  The identity of
the semifield is the rational ``0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


def to_q(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, TropScalar):
        return value.value
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def q_str(q: Fraction) -> str:
    """Serialise a rational as ``p/q`` (always with a denominator)."""
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, order=True)
class TropScalar:
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", to_q(self.value))

    def __add__(self, other: "TropScalar") -> "TropScalar":
        return add(self, other)

    def __mul__(self, other: "TropScalar") -> "TropScalar":
        return mul(self, other)

    def __and__(self, other: "TropScalar") -> "TropScalar":
        return meet(self, other)

    def inverse(self) -> "TropScalar":
        return TropScalar(-self.value)

    def __str__(self) -> str:
        return "{" + str(self.value) + "}"


ONE = TropScalar(Fraction(0))


def _coerce(a) -> TropScalar:
    return a if isinstance(a, TropScalar) else TropScalar(to_q(a))


def add(a, b) -> TropScalar:
    """Tropical sum: the larger of the two values."""
    a, b = _coerce(a), _coerce(b)
    return a if a.value >= b.value else b


def mul(a, b) -> TropScalar:
    a, b = _coerce(a), _coerce(b)
    return TropScalar(a.value + b.value)


def abs(a) -> TropScalar:  # noqa: A001 - mirrors the semifield notation |a|
    a = _coerce(a)
    return TropScalar(max(a.value, -a.value))


def meet(a, b) -> TropScalar:
    """Lattice meet, i.e. the smaller value."""
    a, b = _coerce(a), _coerce(b)
    return a if a.value <= b.value else b
