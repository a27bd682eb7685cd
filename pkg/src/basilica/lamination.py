"""The basilica lamination, the dynamical partitions P_n, and the
correspondence between inner angles on the boundary of U_0 and outer angles."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .circle import (
    HALF,
    THIRD,
    TWO_THIRDS,
    Angle,
    Arc,
    angle,
    ccw_length,
    d_level,
    double,
    halves,
    in_d_infinity,
    is_dyadic,
)
from .errors import DepthCap, InvalidAddress, NotLaminationPoint

DEPTH_CAP = 24
FIVE_SIXTHS = Fraction(5, 6)
ONE_SIXTH = Fraction(1, 6)


def _check_depth(n: int, cap: int = DEPTH_CAP) -> None:
    if n < 0:
        raise ValueError("level must be nonnegative")
    if n > cap:
        raise DepthCap(f"level {n} exceeds the depth cap {cap}")


# ---- D_n -------------------------------------------------------------------


def d_points(n: int, cap: int = DEPTH_CAP) -> List[Angle]:
    """All angles k/(3*2^n) with 3 not dividing k, sorted."""
    _check_depth(n, cap)
    q = 3 << n
    return [Fraction(k, q) for k in range(q) if k % 3]


def d_gaps(n: int) -> List[Fraction]:
    pts = d_points(n)
    return [ccw_length(a, b) for a, b in zip(pts, pts[1:] + pts[:1])]


def verify_alternation(n: int) -> bool:
    gaps = d_gaps(n)
    short, long_ = Fraction(1, 3 << n), Fraction(2, 3 << n)
    if any(g not in (short, long_) for g in gaps):
        return False
    return all(gaps[i] != gaps[i - 1] for i in range(len(gaps)))


# ---- leaves ----------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Leaf:
    a: Angle
    b: Angle

    def __post_init__(self) -> None:
        a, b = angle(self.a), angle(self.b)
        if a == b:
            raise ValueError("a leaf needs two distinct endpoints")
        if b < a:
            a, b = b, a
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def other(self, x: Angle) -> Angle:
        if x == self.a:
            return self.b
        if x == self.b:
            return self.a
        raise ValueError(f"{x} is not an endpoint of {self}")

    @property
    def short_arc(self) -> Arc:
        """The side of the leaf of length below 1/2 (the wake side)."""
        arc = Arc(self.a, self.b)
        return arc if arc.length < HALF else Arc(self.b, self.a)

    def level(self) -> int:
        return max(d_level(self.a), d_level(self.b))

    def __str__(self) -> str:
        return f"{{{self.a},{self.b}}}"


ALPHA_LEAF = Leaf(THIRD, TWO_THIRDS)


def links(l1: Leaf, l2: Leaf) -> bool:
    """True iff the chords cross in the open disk."""
    if {l1.a, l1.b} & {l2.a, l2.b}:
        return False
    inside = Arc(l1.a, l1.b).interior_contains
    return inside(l2.a) != inside(l2.b)


def non_linking(leaves: Iterable[Leaf]) -> bool:
    """Balanced-parenthesis scan over the sorted endpoints.  Assumes no two
    leaves share an endpoint, which holds for the basilica lamination."""
    events = []
    for i, leaf in enumerate(leaves):
        events.append((leaf.a, i))
        events.append((leaf.b, i))
    events.sort()
    if any(x == y for (x, _), (y, _) in zip(events, events[1:])):
        raise ValueError("leaves share an endpoint")
    stack: List[int] = []
    for _, i in events:
        if stack and stack[-1] == i:
            stack.pop()
        else:
            stack.append(i)
    return not stack


def _same_side(x: Angle, y: Angle) -> bool:
    """Both strictly on one side of the diameter from 1/3 to 5/6."""
    side = Arc(THIRD, FIVE_SIXTHS).interior_contains
    return side(x) == side(y)


def pull_back(leaf: Leaf) -> List[Leaf]:
    """Both preimage leaves under the doubling map."""
    if leaf == ALPHA_LEAF:
        return [ALPHA_LEAF, Leaf(ONE_SIXTH, FIVE_SIXTHS)]
    a1, a2 = halves(leaf.a)
    b1, b2 = halves(leaf.b)
    if _same_side(a1, b1):
        return [Leaf(a1, b1), Leaf(a2, b2)]
    return [Leaf(a1, b2), Leaf(a2, b1)]


def partner(a: Angle, lam: Optional["LaminationLevels"] = None) -> Angle:
    """The other endpoint of the leaf through ``a``."""
    a = angle(a)
    if not in_d_infinity(a):
        raise NotLaminationPoint(f"{a} is not in D_infinity")
    if lam is not None:
        if d_level(a) > lam.depth:
            raise NotLaminationPoint(f"{a} lies beyond depth {lam.depth}")
        return lam.partner_map[a]
    return _partner(a)


def _partner(a: Angle) -> Angle:
    # walk forward to level 1, then pull the partner back along the orbit
    orbit = [a]
    while d_level(orbit[-1]) > 1:
        orbit.append(double(orbit[-1]))
    top = orbit[-1]
    if top in (THIRD, TWO_THIRDS):
        p = THIRD if top == TWO_THIRDS else TWO_THIRDS
    else:
        p = FIVE_SIXTHS if top == ONE_SIXTH else ONE_SIXTH
    for x in reversed(orbit[:-1]):
        h1, h2 = halves(p)
        p = h1 if _same_side(x, h1) else h2
    return p


def is_leaf(a: Angle, b: Angle) -> bool:
    a, b = angle(a), angle(b)
    if not (in_d_infinity(a) and in_d_infinity(b)):
        return False
    return _partner(a) == b


@dataclass(frozen=True)
class LaminationLevels:
    depth: int
    levels: Tuple[FrozenSet[Leaf], ...]

    def leaves(self, upto: Optional[int] = None) -> List[Leaf]:
        top = self.depth if upto is None else upto
        return sorted(l for k in range(top + 1) for l in self.levels[k])

    @cached_property
    def partner_map(self) -> Dict[Angle, Angle]:
        out = {}
        for level in self.levels:
            for leaf in level:
                out[leaf.a] = leaf.b
                out[leaf.b] = leaf.a
        return out


def build_lamination(depth: int, cap: int = DEPTH_CAP) -> LaminationLevels:
    _check_depth(depth, cap)
    return _build(depth)


@lru_cache(maxsize=32)
def _build(depth: int) -> LaminationLevels:
    levels = [frozenset([ALPHA_LEAF])]
    seen = {ALPHA_LEAF}
    for _ in range(depth):
        new = set()
        for leaf in levels[-1]:
            for pre in pull_back(leaf):
                if pre not in seen:
                    new.add(pre)
        seen |= new
        levels.append(frozenset(new))
    return LaminationLevels(depth, tuple(levels))


# ---- partitions ------------------------------------------------------------


class ArcCase(str, enum.Enum):
    LIMB = "LimbArc"
    SPAN = "SpanArc"


@dataclass(frozen=True)
class PartitionArc:
    arc: Arc
    case: ArcCase
    level: int


def partition(n: int, cap: int = DEPTH_CAP) -> List[PartitionArc]:
    pts = d_points(n, cap)
    out = []
    for a, b in zip(pts, pts[1:] + pts[:1]):
        case = ArcCase.LIMB if _partner(a) == b else ArcCase.SPAN
        out.append(PartitionArc(Arc(a, b), case, n))
    return out


def preserves_lamination(f, depth: int) -> bool:
    """Check that ``f`` sends every leaf of level <= depth to a leaf."""
    for leaf in build_lamination(depth).leaves():
        fa, fb = f(leaf.a), f(leaf.b)
        if not (in_d_infinity(fa) and in_d_infinity(fb)):
            return False
        if _partner(fa) != fb:
            return False
    return True


# ---- inner <-> outer correspondence ---------------------------------------


def _digits(t: Angle) -> Tuple[List[int], List[int]]:
    """Preperiod and period of the binary expansion of a rational in [0,1);
    dyadic values get the terminating (0-tail) expansion."""
    t = angle(t)
    q = t.denominator
    pre = 0
    while q % 2 == 0:
        q //= 2
        pre += 1
    period = 1
    if q > 1:
        r = 2 % q
        while r != 1:
            r = r * 2 % q
            period += 1
    bits = []
    x = t
    for _ in range(pre + period):
        x *= 2
        bits.append(int(x >= 1))
        x -= bits[-1]
    return bits[:pre], bits[pre:]


def _value(pre: Sequence[int], rep: Sequence[int]) -> Angle:
    ip = int("".join(map(str, pre)) or "0", 2)
    ir = int("".join(map(str, rep)), 2)
    return angle((ip + Fraction(ir, (1 << len(rep)) - 1)) / (1 << len(pre)))


def _substitute(bits: Sequence[int]) -> List[int]:
    out = []
    for b in bits:
        out += (1, 0) if b else (0, 1)
    return out


def _expansions(t: Angle) -> List[Tuple[List[int], List[int]]]:
    """Expansions of t; for dyadic t the 1-tail one first, then the 0-tail."""
    t = angle(t)
    if not is_dyadic(t):
        return [_digits(t)]
    k = t.denominator.bit_length() - 1
    u = t.numerator
    plus = ([int(c) for c in format(u, f"0{k}b")] if k else [], [0])
    minus_u = (u - 1) % (1 << k) if k else 0
    minus = ([int(c) for c in format(minus_u, f"0{k}b")] if k else [], [1])
    return [minus, plus]


def _outer(pre: Sequence[int], rep: Sequence[int], component: str) -> Angle:
    s = _value(_substitute(pre), _substitute(rep))
    if component == "U-1":
        return s
    if component == "U0":
        return double(s)
    raise ValueError(f"unknown component {component!r}")


def inner_to_outer(t: Angle, component: str = "U0") -> Tuple[Angle, ...]:
    """Outer angles of the point of inner angle ``t`` on the boundary of U_0
    (or U_{-1}); for dyadic t the pair (minus side, plus side)."""
    return tuple(_outer(p, r, component) for p, r in _expansions(Fraction(t)))


def outer_minus(t: Angle) -> Angle:
    return inner_to_outer(t)[0]


def outer_plus(t: Angle) -> Angle:
    return inner_to_outer(t)[-1]


def wake_interval(root) -> Arc:
    """Wake of a dyadic inner angle on the boundary of U_0, or of the root of
    a component given as an address (a list or tuple of dyadic steps)."""
    if isinstance(root, (list, tuple)):
        from .tree import component_wake

        return component_wake(root)
    t = angle(Fraction(root))
    if not is_dyadic(t):
        raise InvalidAddress(f"inner angle {t} is not dyadic")
    lo, hi = inner_to_outer(t)
    return Arc(lo, hi)


@dataclass(frozen=True)
class MainLocation:
    """Position of an outer angle relative to the boundary of U_0.

    kind is "boundary" (the ray lands on the boundary at inner angle t, on
    the given side for dyadic t) or "wake" (it lies inside the wake of t)."""

    kind: str
    t: Angle
    side: Optional[str] = None


def locate_on_main(theta: Angle) -> MainLocation:
    theta = angle(theta)
    if theta == THIRD:
        return MainLocation("boundary", Fraction(0), "-")
    if theta == TWO_THIRDS:
        return MainLocation("boundary", Fraction(0), "+")
    if THIRD < theta < TWO_THIRDS:
        return MainLocation("wake", Fraction(0))
    # first outer digit is the complement of the first inner digit
    if theta < THIRD:
        u, r = 1, 2 * theta
    else:
        u, r = 0, 2 * theta - 1
    j = 1
    seen = {}
    while True:
        if r < THIRD:
            return MainLocation("wake", Fraction(u, 1 << j))
        if r == THIRD:
            return MainLocation("boundary", Fraction(u, 1 << j), "+")
        if r > TWO_THIRDS:
            return MainLocation("wake", angle(Fraction(u + 1, 1 << j)))
        if r == TWO_THIRDS:
            return MainLocation("boundary", angle(Fraction(u + 1, 1 << j)), "-")
        if r in seen:
            # periodic inner expansion: a non-dyadic boundary point
            j0, u0 = seen[r]
            period = j - j0
            rep = u - (u0 << period)
            t = (u0 + Fraction(rep, (1 << period) - 1)) / (1 << j0)
            return MainLocation("boundary", angle(t))
        seen[r] = (j, u)
        if r < HALF:
            u, r = 2 * u, 4 * r - 1
        else:
            u, r = 2 * u + 1, 4 * r - 2
        j += 1
