"""Exact staircase weights, sided slopes, and dilation lattice counts.

Everything downstream (indices, window drops, bound samples) depends on
knowing exactly which side of an integer a product lands on, so floats
are rejected up front and all arithmetic stays in ``fractions.Fraction``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, gcd
from typing import Union

Rational = Union[int, Fraction]

__all__ = [
    "IntervalSpec",
    "Rational",
    "Side",
    "Slope",
    "c_count",
    "n_count",
    "w_at",
    "w_index",
]


def _exact(x: Rational, what: str = "value") -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
        raise TypeError(f"{what} must be an exact rational, got {type(x).__name__}")
    return Fraction(x)


def w_index(x: Rational) -> int:
    """Staircase weight of a rotation number.

    Takes the value ``2x`` at integers and ``2*floor(x) + 1`` in between:
    the unique nondecreasing odd extension of the doubling map that is
    odd-valued exactly off the integers.
    """
    xf = _exact(x)
    if xf.denominator == 1:
        return 2 * int(xf)
    return 2 * floor(xf) + 1


class Side(enum.Enum):
    """Which one-sided limit a slope denotes."""

    BELOW = -1
    AT = 0
    ABOVE = 1

    def __repr__(self) -> str:
        return self.name


_SLOPE_RE = re.compile(r"^(\d+)(?:/(\d+))?([+-]?)$")
_SUFFIX = {Side.BELOW: "-", Side.AT: "", Side.ABOVE: "+"}


@dataclass(frozen=True)
class Slope:
    """A nonnegative rational with a side marker.

    Text syntax is ``k/m``, ``k/m+``, ``k/m-`` (or the same with a bare
    integer).  ``0+`` is the canonical base point; ``0-`` is meaningless
    and rejected, since nothing lives below the zero slope.
    """

    value: Fraction
    side: Side = Side.AT

    def __post_init__(self) -> None:
        v = _exact(self.value, "slope value")
        object.__setattr__(self, "value", v)
        if v < 0:
            raise ValueError(f"slope value must be nonnegative, got {v}")
        if v == 0 and self.side is Side.BELOW:
            raise ValueError("the slope 0- does not exist")

    @classmethod
    def parse(cls, text: str) -> "Slope":
        m = _SLOPE_RE.match(text.strip())
        if not m:
            raise ValueError(f"cannot parse slope {text!r}")
        num, den, suffix = m.groups()
        if den is not None and int(den) == 0:
            raise ValueError(f"zero denominator in slope {text!r}")
        value = Fraction(int(num), int(den) if den is not None else 1)
        side = {"": Side.AT, "+": Side.ABOVE, "-": Side.BELOW}[suffix]
        return cls(value, side)

    def __str__(self) -> str:
        return f"{self.value}{_SUFFIX[self.side]}"

    def _key(self) -> tuple[Fraction, int]:
        return (self.value, self.side.value)

    def __lt__(self, other: "Slope") -> bool:
        return self._key() < other._key()

    def __le__(self, other: "Slope") -> bool:
        return self._key() <= other._key()

    def __gt__(self, other: "Slope") -> bool:
        return self._key() > other._key()

    def __ge__(self, other: "Slope") -> bool:
        return self._key() >= other._key()


def w_at(s: Slope, k: Rational) -> int:
    """Sided staircase weight of ``s.value * k``.

    Off the integers the side is irrelevant.  When the product is an
    integer, approaching from above pushes a positive ``k`` onto the next
    odd step and a negative ``k`` onto the previous one; approaching from
    below does the opposite.  ``k = 0`` always gives 0.
    """
    if isinstance(k, float):
        raise TypeError("k must be an exact integer or rational")
    kf = _exact(k, "k")
    x = s.value * kf
    base = w_index(x)
    if x.denominator != 1 or s.side is Side.AT or kf == 0:
        return base
    bump = 1 if s.side is Side.ABOVE else -1
    return base + (bump if kf > 0 else -bump)


@dataclass(frozen=True)
class IntervalSpec:
    """A rational interval with explicit endpoint inclusion flags."""

    lo: Fraction
    hi: Fraction
    include_lo: bool = True
    include_hi: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", _exact(self.lo, "lo"))
        object.__setattr__(self, "hi", _exact(self.hi, "hi"))

    @classmethod
    def closed(cls, lo: Rational, hi: Rational) -> "IntervalSpec":
        return cls(Fraction(lo), Fraction(hi), True, True)

    @classmethod
    def open_closed(cls, lo: Rational, hi: Rational) -> "IntervalSpec":
        return cls(Fraction(lo), Fraction(hi), False, True)

    def __str__(self) -> str:
        left = "[" if self.include_lo else "("
        right = "]" if self.include_hi else ")"
        return f"{left}{self.lo}, {self.hi}{right}"


def _dilation_count(m: int, interval: IntervalSpec, coprime: bool) -> int:
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ValueError(f"multiplier must be a positive integer, got {m!r}")
    lo = interval.lo * m
    hi = interval.hi * m
    if lo > hi:
        return 0
    total = 0
    for j in range(ceil(lo), floor(hi) + 1):
        if coprime and gcd(j, m) != 1:
            continue
        at_lo = j == lo
        at_hi = j == hi
        if at_lo or at_hi:
            included = (not at_lo or interval.include_lo) and (
                not at_hi or interval.include_hi
            )
            total += 1 if included else 0
        else:
            total += 2
    return total


def n_count(m: int, interval: IntervalSpec) -> int:
    """Integers in the ``m``-fold dilation of the interval.

    Interior integers count twice, included endpoints once, excluded
    endpoints not at all.  The double weight is what makes the count
    telescope across adjacent windows that share an endpoint.
    """
    return _dilation_count(m, interval, coprime=False)


def c_count(m: int, interval: IntervalSpec) -> int:
    """Same dilation count restricted to integers coprime to ``m``.

    Summing over the divisors of ``m`` recovers ``n_count`` exactly, one
    divisor per residue class.
    """
    return _dilation_count(m, interval, coprime=True)
