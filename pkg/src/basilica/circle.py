"""Exact arithmetic on the circle R/Z.

Angles are plain :class:`fractions.Fraction` values normalized into ``[0, 1)``;
``Angle`` is only a type alias.  Fractions are immutable, reduced on
construction and hash structurally, which is all the algebra layer needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

Angle = Fraction
Number = Union[int, Fraction, str]

ZERO = Fraction(0)
HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)
TWO_THIRDS = Fraction(2, 3)


def angle(x: Number) -> Angle:
    """Reduce ``x`` to its representative in [0, 1)."""
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


def parse_angle(text: str) -> Angle:
    return angle(Fraction(text.strip()))


def format_angle(a: Angle) -> str:
    return str(angle(a))


def angle_add(a: Angle, b: Angle) -> Angle:
    return angle(a + b)


def angle_sub(a: Angle, b: Angle) -> Angle:
    return angle(a - b)


def double(a: Angle, times: int = 1) -> Angle:
    """The doubling map g (iterated ``times`` times)."""
    return angle(a * (1 << times))


def halves(a: Angle) -> Tuple[Angle, Angle]:
    """Both solutions of 2x = a mod 1, smaller first."""
    h = angle(a) / 2
    return h, h + HALF


def is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def is_dyadic(a: Angle) -> bool:
    return is_power_of_two(Fraction(a).denominator)


def is_tri_dyadic(a: Angle) -> bool:
    """Denominator of the form 2^k or 3*2^k."""
    q = Fraction(a).denominator
    if q % 3 == 0:
        q //= 3
    return is_power_of_two(q)


def log2_exact(n: int) -> int:
    """Exponent k with n == 2^k; ValueError otherwise."""
    if not is_power_of_two(n):
        raise ValueError(f"{n} is not a power of two")
    return n.bit_length() - 1


def power_of_two_exponent(r: Fraction) -> int | None:
    """k with r == 2^k, or None."""
    r = Fraction(r)
    if r <= 0:
        return None
    p, q = r.numerator, r.denominator
    if p == 1 and is_power_of_two(q):
        return -log2_exact(q)
    if q == 1 and is_power_of_two(p):
        return log2_exact(p)
    return None


def dyadic_level(a: Angle) -> int:
    """Smallest n with g^n(a) = 0."""
    return log2_exact(angle(a).denominator)


def d_level(a: Angle) -> int:
    """Smallest n with g^n(a) in {1/3, 2/3}; only for points of D_infinity."""
    q = angle(a).denominator
    if q % 3:
        raise ValueError(f"{a} is not in D_infinity")
    return log2_exact(q // 3)


def in_d_infinity(a: Angle) -> bool:
    q = Fraction(a).denominator
    return q % 3 == 0 and is_power_of_two(q // 3)


def ccw_length(a: Angle, b: Angle) -> Fraction:
    """Length of the counterclockwise path from a to b, in [0, 1)."""
    return angle(b - a)


def cyclic_between(a: Angle, b: Angle, c: Angle) -> bool:
    """True iff moving counterclockwise from a one meets b before c."""
    if a == b or b == c or a == c:
        raise ValueError("cyclic_between needs three distinct angles")
    return ccw_length(a, b) < ccw_length(a, c)


def circle_distance(x: float, y: float) -> float:
    d = (x - y) % 1.0
    return min(d, 1.0 - d)


@dataclass(frozen=True)
class Arc:
    """Closed arc traversed counterclockwise from ``start`` to ``end``."""

    start: Angle
    end: Angle

    def __post_init__(self) -> None:
        object.__setattr__(self, "start", angle(self.start))
        object.__setattr__(self, "end", angle(self.end))
        if self.start == self.end:
            raise ValueError("degenerate arc")

    @property
    def length(self) -> Fraction:
        return ccw_length(self.start, self.end)

    def contains(self, a: Angle) -> bool:
        return ccw_length(self.start, angle(a)) <= self.length

    def interior_contains(self, a: Angle) -> bool:
        d = ccw_length(self.start, angle(a))
        return 0 < d < self.length

    def point_at(self, t: Fraction) -> Angle:
        """Point at ccw distance ``t`` from the start."""
        return angle(self.start + t)

    def __str__(self) -> str:
        return f"[{self.start},{self.end}]"


def arc_contains(arc: Arc, a: Angle) -> bool:
    return arc.contains(a)
