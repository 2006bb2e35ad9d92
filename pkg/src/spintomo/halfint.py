"""Exact half-integer arithmetic for spin quantum numbers.

Spins and magnetic numbers are stored as twice their value in an ``int``, so
index arithmetic like ``j - m`` or ``2*j + 1`` is exact and never touches
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Integral, Real


@dataclass(frozen=True, order=True)
class HalfInt:
    """An integer or half-odd-integer, stored as twice its value."""

    twice: int

    def __post_init__(self):
        if not isinstance(self.twice, Integral):
            raise ValueError(f"twice-value must be an integer, got {self.twice!r}")
        object.__setattr__(self, "twice", int(self.twice))

    @staticmethod
    def of(value) -> "HalfInt":
        """Coerce an int, an exact multiple of 1/2, or a HalfInt."""
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, Integral):
            return HalfInt(2 * int(value))
        if isinstance(value, Real):
            doubled = 2.0 * float(value)
            if doubled != round(doubled):
                raise ValueError(f"{value!r} is not an integer or half-integer")
            return HalfInt(int(round(doubled)))
        raise TypeError(f"cannot interpret {value!r} as a half-integer")

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __add__(self, other) -> "HalfInt":
        return HalfInt(self.twice + HalfInt.of(other).twice)

    __radd__ = __add__

    def __sub__(self, other) -> "HalfInt":
        return HalfInt(self.twice - HalfInt.of(other).twice)

    def __rsub__(self, other) -> "HalfInt":
        return HalfInt(HalfInt.of(other).twice - self.twice)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __abs__(self) -> "HalfInt":
        return HalfInt(abs(self.twice))

    def __float__(self) -> float:
        return self.twice / 2.0

    def __str__(self) -> str:
        if self.is_integer:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self})"


def spin_range(j) -> list[HalfInt]:
    """Magnetic numbers m = j, j-1, ..., -j (the basis ordering used throughout)."""
    jt = HalfInt.of(j).twice
    if jt < 0:
        raise ValueError("spin j must be nonnegative")
    return [HalfInt(t) for t in range(jt, -jt - 1, -2)]
