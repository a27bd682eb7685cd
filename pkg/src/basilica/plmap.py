"""Piecewise-linear circle homeomorphisms, Thompson-type classification, and
decomposition into branches of the doubling pseudo-group."""

from __future__ import annotations

import enum
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, List, Sequence, Tuple

from .circle import (
    Angle,
    Arc,
    HALF,
    angle,
    ccw_length,
    double,
    format_angle,
    is_dyadic,
    is_tri_dyadic,
    parse_angle,
    power_of_two_exponent,
)
from .errors import NonMonotone, NotDyadic, Unrealizable

Node = Tuple[Angle, Angle]


@dataclass(frozen=True)
class Segment:
    """One linearity piece, in lifted coordinates: x0 < x1 <= x0 + 1."""

    x0: Fraction
    x1: Fraction
    y0: Fraction
    y1: Fraction

    @property
    def slope(self) -> Fraction:
        return (self.y1 - self.y0) / (self.x1 - self.x0)

    @property
    def domain(self) -> Arc:
        return Arc(self.x0, self.x1)

    @property
    def image(self) -> Arc:
        return Arc(self.y0, self.y1)

    def __call__(self, x: Fraction) -> Fraction:
        return self.y0 + (x - self.x0) * self.slope


@dataclass(frozen=True)
class PLCircleMap:
    """Orientation preserving PL homeomorphism of R/Z given by canonical nodes.

    Build instances with :func:`make_plmap`; the constructor trusts its input.
    """

    nodes: Tuple[Node, ...]

    # ---- structure -------------------------------------------------------

    @cached_property
    def _xs(self) -> List[Angle]:
        return [x for x, _ in self.nodes]

    @cached_property
    def _steps(self) -> List[Tuple[Fraction, Fraction]]:
        k = len(self.nodes)
        if k == 1:
            return [(Fraction(1), Fraction(1))]
        out = []
        for i in range(k):
            (x0, y0), (x1, y1) = self.nodes[i], self.nodes[(i + 1) % k]
            out.append((ccw_length(x0, x1), ccw_length(y0, y1)))
        return out

    @cached_property
    def slopes(self) -> Tuple[Fraction, ...]:
        return tuple(dy / dx for dx, dy in self._steps)

    @property
    def breakpoints(self) -> Tuple[Angle, ...]:
        return tuple(self._xs) if len(self.nodes) > 1 else ()

    @property
    def values(self) -> Tuple[Angle, ...]:
        return tuple(y for _, y in self.nodes)

    def segments(self) -> Iterator[Segment]:
        for (x, y), (dx, dy) in zip(self.nodes, self._steps):
            yield Segment(x, x + dx, y, y + dy)

    @property
    def is_identity(self) -> bool:
        return self.nodes == ((Fraction(0), Fraction(0)),)

    # ---- evaluation ------------------------------------------------------

    def __call__(self, a: Angle) -> Angle:
        a = angle(a)
        i = bisect_right(self._xs, a) - 1
        if i < 0:
            i = len(self.nodes) - 1
        x, y = self.nodes[i]
        return angle(y + ccw_length(x, a) * self.slopes[i])

    def evaluate_float(self, a: float) -> float:
        """Float evaluation for dense sampling."""
        a = a % 1.0
        xs = self._float_xs
        i = bisect_right(xs, a) - 1
        if i < 0:
            i = len(xs) - 1
        x, y, s = xs[i], self._float_ys[i], self._float_slopes[i]
        return (y + ((a - x) % 1.0) * s) % 1.0

    @cached_property
    def _float_xs(self) -> List[float]:
        return [float(x) for x in self._xs]

    @cached_property
    def _float_ys(self) -> List[float]:
        return [float(y) for _, y in self.nodes]

    @cached_property
    def _float_slopes(self) -> List[float]:
        return [float(s) for s in self.slopes]

    @cached_property
    def inverse(self) -> "PLCircleMap":
        return _canonical([(y, x) for x, y in self.nodes])

    # ---- group operations -------------------------------------------------

    def __matmul__(self, other: "PLCircleMap") -> "PLCircleMap":
        return compose(self, other)

    def __str__(self) -> str:
        return " ".join(f"{x}->{y}" for x, y in self.nodes)


def _canonical(pairs: Sequence[Node]) -> PLCircleMap:
    """Sort, drop collinear nodes; assumes a valid homeomorphism."""
    pts = sorted((angle(x), angle(y)) for x, y in pairs)
    raw = PLCircleMap(tuple(pts))
    if len(pts) == 1:
        return PLCircleMap(((Fraction(0), raw(Fraction(0))),))
    slopes = raw.slopes
    k = len(pts)
    keep = [pts[i] for i in range(k) if slopes[i - 1] != slopes[i]]
    if not keep:
        return PLCircleMap(((Fraction(0), raw(Fraction(0))),))
    return PLCircleMap(tuple(keep))


def make_plmap(pairs: Iterable[Tuple[object, object]]) -> PLCircleMap:
    """Canonical homeomorphism interpolating ``pairs`` counterclockwise."""
    pts = sorted((angle(Fraction(x)), angle(Fraction(y))) for x, y in pairs)
    if not pts:
        raise ValueError("need at least one node")
    xs = [x for x, _ in pts]
    ys = [y for _, y in pts]
    if len(set(xs)) != len(xs) or len(set(ys)) != len(ys):
        raise NonMonotone("breakpoints and values must be distinct")
    if len(pts) > 1:
        turn = sum(ccw_length(ys[i], ys[(i + 1) % len(ys)]) for i in range(len(ys)))
        if turn != 1:
            raise NonMonotone("values are not in the cyclic order of the breakpoints")
    return _canonical(pts)


IDENTITY = PLCircleMap(((Fraction(0), Fraction(0)),))


def rotation(r: object) -> PLCircleMap:
    return PLCircleMap(((Fraction(0), angle(Fraction(r))),))


def compose(f: PLCircleMap, g: PLCircleMap) -> PLCircleMap:
    """f after g."""
    ginv = g.inverse
    xs = set(g._xs)
    xs.update(ginv(x) for x in f._xs)
    return _canonical([(x, f(g(x))) for x in xs])


def invert(f: PLCircleMap) -> PLCircleMap:
    return f.inverse


def compose_all(maps: Iterable[PLCircleMap]) -> PLCircleMap:
    """Composition m0 o m1 o ... (rightmost applied first)."""
    out = IDENTITY
    for m in maps:
        out = compose(out, m)
    return out


# ---- Thompson generators ---------------------------------------------------

F = Fraction
GENERATORS = {
    "A": make_plmap([(0, 0), (F(1, 2), F(1, 4)), (F(3, 4), F(1, 2))]),
    "B": make_plmap([(0, 0), (F(1, 2), F(1, 2)), (F(3, 4), F(5, 8)), (F(7, 8), F(3, 4))]),
    "C": make_plmap([(0, F(3, 4)), (F(1, 2), 0), (F(3, 4), F(1, 2))]),
}


def generator(name: str) -> PLCircleMap:
    return GENERATORS[name]


# ---- classification --------------------------------------------------------


class MembershipClass(str, enum.Enum):
    THOMPSON_T = "ThompsonT"
    THOMPSON_LIKE_T_ALPHA = "ThompsonLikeTα"
    NEITHER = "Neither"


def _slopes_ok(f: PLCircleMap) -> bool:
    return all(power_of_two_exponent(s) is not None for s in f.slopes)


def membership_class(f: PLCircleMap) -> MembershipClass:
    if not _slopes_ok(f):
        return MembershipClass.NEITHER
    pts = [p for node in f.nodes for p in node]
    if all(is_dyadic(p) for p in pts):
        return MembershipClass.THOMPSON_T
    if all(is_tri_dyadic(p) for p in pts):
        # D_infinity is preserved iff every affine piece has a dyadic offset.
        if all(is_dyadic(s.y0 - s.slope * s.x0) for s in f.segments()):
            return MembershipClass.THOMPSON_LIKE_T_ALPHA
    return MembershipClass.NEITHER


# ---- large scale interpolation ---------------------------------------------


def _blocks(length: Fraction) -> List[Fraction]:
    """Binary expansion of a dyadic length as powers of two, largest first."""
    p, q = length.numerator, length.denominator
    out = []
    bit = 1 << (p.bit_length() - 1)
    while bit:
        if p & bit:
            out.append(Fraction(bit, q))
        bit >>= 1
    return out


def _split_largest(blocks: List[Fraction]) -> None:
    i = max(range(len(blocks)), key=lambda j: blocks[j])
    half = blocks[i] / 2
    blocks[i : i + 1] = [half, half]


def interpolate_lengths(len0: Fraction, len1: Fraction) -> List[Tuple[Fraction, Fraction]]:
    """Offsets (u, v) of a PL bijection [0, len0] -> [0, len1] with dyadic
    breaks and power-of-two slopes; first node (0, 0), last (len0, len1)."""
    if not (is_dyadic(len0) and is_dyadic(len1)) or len0 <= 0 or len1 <= 0:
        raise NotDyadic("interval lengths must be positive dyadic numbers")
    b0, b1 = _blocks(Fraction(len0)), _blocks(Fraction(len1))
    while len(b0) < len(b1):
        _split_largest(b0)
    while len(b1) < len(b0):
        _split_largest(b1)
    nodes = [(Fraction(0), Fraction(0))]
    u = v = Fraction(0)
    for s, t in zip(b0, b1):
        u, v = u + s, v + t
        nodes.append((u, v))
    return nodes


@dataclass(frozen=True)
class PLArcMap:
    """PL bijection between two arcs; nodes are absolute angles in order."""

    nodes: Tuple[Node, ...]

    def __call__(self, a: Angle) -> Angle:
        x0, y0 = self.nodes[0]
        d = ccw_length(x0, angle(a))
        for (xa, ya), (xb, yb) in zip(self.nodes, self.nodes[1:]):
            da, db = ccw_length(x0, xa), ccw_length(x0, xb)
            if da <= d <= db:
                return angle(ya + (d - da) * ccw_length(ya, yb) / (db - da))
        raise ValueError(f"{a} is outside the domain arc")

    @property
    def slopes(self) -> Tuple[Fraction, ...]:
        return tuple(
            ccw_length(ya, yb) / ccw_length(xa, xb)
            for (xa, ya), (xb, yb) in zip(self.nodes, self.nodes[1:])
        )


def arc_interpolate(i0: Arc, i1: Arc) -> PLArcMap:
    """PL map of I0 onto I1, dyadic breaks, power-of-two slopes."""
    for p in (i0.start, i0.end, i1.start, i1.end):
        if not is_dyadic(p):
            raise NotDyadic(f"endpoint {p} is not dyadic")
    offs = interpolate_lengths(i0.length, i1.length)
    return PLArcMap(tuple((angle(i0.start + u), angle(i1.start + v)) for u, v in offs))


# ---- pseudo-group decomposition --------------------------------------------


@dataclass(frozen=True)
class DynBranch:
    """g^{-backward} o g^{forward} along an arc, with the pulled-back branch
    starting at ``anchor``."""

    forward: int
    backward: int
    anchor: Angle

    @property
    def slope(self) -> Fraction:
        return Fraction(2) ** (self.forward - self.backward)

    def apply(self, start: Angle, x: Angle) -> Angle:
        # lift of the path g^n([start, x]), then pull back along the branch
        shift = ccw_length(start, angle(x)) * (1 << self.forward)
        return angle(self.anchor + shift / (1 << self.backward))


def _two_exponent(q: int) -> int:
    return (q & -q).bit_length() - 1


def dyn_decompose_segment(arc: Arc, image: Arc, slope_exp: int) -> DynBranch:
    a, b = arc.start, image.start
    for p in (arc.start, arc.end, image.start, image.end):
        if not is_tri_dyadic(p):
            raise Unrealizable(f"endpoint {p} is neither dyadic nor in D_infinity")
    if image.length != arc.length * Fraction(2) ** slope_exp:
        raise Unrealizable("lengths do not match the slope")
    bound = _two_exponent(a.denominator) + _two_exponent(b.denominator) + abs(slope_exp) + 4
    for n in range(max(0, slope_exp), bound + 1):
        m = n - slope_exp
        if double(b, m) != double(a, n):
            continue
        if arc.length * (1 << n) > 1 or image.length * (1 << m) > 1:
            raise Unrealizable("g^n wraps the arc around the circle")
        branch = DynBranch(n, m, b)
        if branch.apply(a, arc.end) != image.end:
            raise Unrealizable("branch does not reach the image endpoint")
        return branch
    raise Unrealizable(f"no realization of {arc} -> {image}")


def _decompose_piece(seg: Segment, out: List[Tuple[Arc, DynBranch]], depth: int = 0) -> None:
    exp = power_of_two_exponent(seg.slope)
    if exp is None:
        raise Unrealizable(f"slope {seg.slope} is not a power of two")
    if seg.x1 - seg.x0 < 1:
        try:
            out.append((seg.domain, dyn_decompose_segment(seg.domain, seg.image, exp)))
            return
        except Unrealizable:
            # a wrapping branch is fixed by halving; anything else is fatal
            if depth > 8:
                raise
    xm = (seg.x0 + seg.x1) / 2
    ym = seg(xm)
    _decompose_piece(Segment(seg.x0, xm, seg.y0, ym), out, depth + 1)
    _decompose_piece(Segment(xm, seg.x1, ym, seg.y1), out, depth + 1)


def piecewise_dynamical_decomposition(f: PLCircleMap) -> List[Tuple[Arc, DynBranch]]:
    if membership_class(f) is MembershipClass.NEITHER:
        raise Unrealizable("map is neither in T nor in T_alpha")
    out: List[Tuple[Arc, DynBranch]] = []
    for seg in f.segments():
        _decompose_piece(seg, out)
    return out


# ---- serialization -----------------------------------------------------------

HEADER = "plmap v1"


def dumps(f: PLCircleMap) -> str:
    lines = [HEADER] + [f"{format_angle(x)} -> {format_angle(y)}" for x, y in f.nodes]
    return "\n".join(lines) + "\n"


def loads(text: str) -> PLCircleMap:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or lines[0] != HEADER:
        raise ValueError("missing 'plmap v1' header")
    pairs = []
    for ln in lines[1:]:
        left, sep, right = ln.partition("->")
        if not sep:
            raise ValueError(f"bad node line: {ln!r}")
        pairs.append((parse_angle(left), parse_angle(right)))
    return make_plmap(pairs)
