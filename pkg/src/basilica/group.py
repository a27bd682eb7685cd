"""The extended Thompson group generated by T and iota, realized by outer
circle maps that preserve the basilica lamination."""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .circle import HALF, THIRD, TWO_THIRDS, Angle, Arc, angle, d_level, dyadic_level, in_d_infinity, is_dyadic
from .errors import (
    NotLaminationPoint,
    NotLaminationPreserving,
    NotMember,
    NotThompson,
    UnresolvedComponent,
)
from .lamination import (
    ALPHA_LEAF,
    ONE_SIXTH,
    FIVE_SIXTHS,
    Leaf,
    is_leaf,
    locate_on_main,
    outer_minus,
    outer_plus,
    preserves_lamination,
)
from .plmap import (
    GENERATORS,
    IDENTITY,
    MembershipClass,
    PLCircleMap,
    _canonical,
    compose,
    make_plmap,
    membership_class,
    rotation,
)
from .tree import (
    Address,
    address_from_leaf,
    component_wake,
    dynamical_distance,
    from_model,
    leaf_from_address,
    make_address,
    to_model,
)
from .words import IOTA, GroupWord, t_word

# ---- the basic outer maps -------------------------------------------------------

IOTA_MAP = make_plmap([(THIRD, TWO_THIRDS), (TWO_THIRDS, THIRD)])
RHO_MAP = rotation(HALF)
SIGMA_MAP = compose(RHO_MAP, IOTA_MAP)


def iota_map() -> PLCircleMap:
    return IOTA_MAP


def rho_map() -> PLCircleMap:
    return RHO_MAP


def sigma_map() -> PLCircleMap:
    return SIGMA_MAP


# ---- extension from the boundary of U_0 ----------------------------------------


def standard_cuts(pieces) -> List[Tuple[Fraction, Fraction]]:
    """Refine linear inner pieces (x0, x1, y0, slope), with 0 <= x0 < x1 <= 1
    and y0 + slope*(x1 - x0) <= 1, into standard dyadic intervals mapped onto
    standard dyadic intervals; returns the (x, y) at every cut, in order."""
    out = []
    for x0, x1, y0, slope in pieces:
        p = x0
        while p < x1:
            y = y0 + (p - x0) * slope
            out.append((p, y))
            step = Fraction(1)
            while p % step or p + step > x1 or y % (step * slope):
                step /= 2
            p += step
    return out


def _inner_pieces(xi: PLCircleMap):
    cuts = sorted(set(xi.breakpoints) | {Fraction(0), xi.inverse(Fraction(0))})
    for i, x0 in enumerate(cuts):
        x1 = cuts[i + 1] if i + 1 < len(cuts) else Fraction(1)
        yield x0, x1, xi(x0), xi.slopes[bisect_right(xi._xs, x0) - 1]


def extend_inner_to_outer(xi: PLCircleMap) -> PLCircleMap:
    """Outer map induced by an element of T acting on the boundary of U_0:
    wakes go affinely to wakes and the gap arcs of standard dyadic pieces
    go by the matching branch of g^{-m} o g^n."""
    if membership_class(xi) is not MembershipClass.THOMPSON_T:
        raise NotThompson(f"{xi} is not an element of T")
    return _extend(xi)


@lru_cache(maxsize=4096)
def _extend(xi: PLCircleMap) -> PLCircleMap:
    nodes = []
    for t, u in standard_cuts(_inner_pieces(xi)):
        u = angle(u)
        nodes.append((outer_minus(t), outer_minus(u)))
        nodes.append((outer_plus(t), outer_plus(u)))
    return _canonical(nodes)


# ---- words ---------------------------------------------------------------------


@lru_cache(maxsize=None)
def letter_map(name: str, exp: int) -> PLCircleMap:
    if name == IOTA:
        return IOTA_MAP
    m = _extend(GENERATORS[name])
    return m if exp == 1 else m.inverse


def word_to_map(w: GroupWord) -> PLCircleMap:
    """The outer map of a word; the leftmost letter is applied last."""
    out = IDENTITY
    for name, exp in w.letters:
        out = compose(out, letter_map(name, exp))
    return out


# ---- action on the tree of components ------------------------------------------


def _side_image(m: PLCircleMap, side: Arc) -> Address:
    """Address of the component lying on the image of ``side``, where side is
    one side of a root leaf and the component is adjacent to that leaf."""
    image_leaf = Leaf(m(side.start), m(side.end))
    if not is_leaf(image_leaf.a, image_leaf.b):
        raise NotLaminationPreserving(f"{image_leaf} is not a leaf")
    addr = address_from_leaf(image_leaf)
    img = Arc(m(side.start), m(side.end))
    return addr if img.length < HALF else addr[:-1]


def act_on_component(m: PLCircleMap, addr) -> Address:
    addr = make_address(addr)
    if addr:
        return _side_image(m, component_wake(addr))
    # U_0 lies opposite the wakes of U_{-1} and U_1
    first = _side_image(m, Arc(TWO_THIRDS, THIRD))
    second = _side_image(m, Arc(ONE_SIXTH, FIVE_SIXTHS))
    if first != second:
        raise UnresolvedComponent(f"markers disagree: {first} vs {second}")
    return first


def _to_coordinate(addr: Address, theta: Angle) -> Angle:
    """Outer angle transported to the model side of U_0 (identity for U_0)."""
    if not addr:
        return theta
    return to_model(component_wake(addr), dynamical_distance(addr), theta)


def _from_coordinate(addr: Address, theta: Angle) -> Angle:
    if not addr:
        return theta
    return from_model(component_wake(addr), dynamical_distance(addr), theta)


def inner_map_at(m: PLCircleMap, addr, t: Angle) -> Angle:
    """Inner angle on the image component of the boundary point of ``addr``
    at inner angle t, both measured in the pulled-back coordinates."""
    addr = make_address(addr)
    target = act_on_component(m, addr)
    theta = _from_coordinate(addr, outer_plus(t))
    loc = locate_on_main(_to_coordinate(target, m(theta)))
    if loc.kind != "boundary" or loc.side not in ("+", None):
        raise NotMember(f"boundary of {addr} is not carried to a boundary")
    return loc.t


def rotation_at(m: PLCircleMap, addr, probes=(Fraction(0), Fraction(1, 4), Fraction(5, 8))) -> Optional[Angle]:
    """The rotation induced on inner angles, or None if not a rotation."""
    shifts = {angle(inner_map_at(m, addr, t) - t) for t in probes}
    return shifts.pop() if len(shifts) == 1 else None


# ---- transitivity ----------------------------------------------------------------


@dataclass(frozen=True)
class Bookkeeping:
    """Dyadic rotation of the inner coordinate on components of the path."""

    rotations: Dict[Address, Angle] = field(default_factory=dict)

    def at(self, addr) -> Angle:
        return self.rotations.get(make_address(addr), Fraction(0))


def _step_word(t: Angle) -> GroupWord:
    """iota o E(rotation by -t): carries the satellite at t onto U_0."""
    w = GroupWord(((IOTA, 1),))
    if t:
        w = w + t_word(rotation(-t))
    return w


def transitivity_element(addr) -> Tuple[GroupWord, Bookkeeping]:
    addr = make_address(addr)
    w = GroupWord()
    rot: Dict[Address, Angle] = {}
    for j, t in enumerate(addr):
        w = _step_word(t) + w
        if t:
            rot[addr[:j]] = angle(-t)
    return w.reduced(), Bookkeeping(rot)


@lru_cache(maxsize=4096)
def transitivity_map(addr: Address) -> PLCircleMap:
    """Outer map of :func:`transitivity_element`, built stepwise."""
    out = IDENTITY
    for t in addr:
        out = compose(word_to_map(_step_word(t)), out)
    return out


# ---- decomposition ---------------------------------------------------------------


PRECHECK_DEPTH = 10


def _level(x: Angle) -> int:
    return dyadic_level(x) if is_dyadic(x) else d_level(x)


def _check_member_shape(m: PLCircleMap) -> None:
    if membership_class(m) is MembershipClass.NEITHER:
        raise NotMember(f"{m} is not in T or T_alpha")
    # deeper leaves are certified by the final word comparison
    depth = min(max(_level(p) for node in m.nodes for p in node) + 2, PRECHECK_DEPTH)
    if not preserves_lamination(m, depth):
        raise NotLaminationPreserving("map does not preserve the lamination")


def _inner_part(m1: PLCircleMap) -> PLCircleMap:
    """The element of T that m1 induces on the boundary of U_0."""
    cand = {Fraction(0)}
    for x, _ in m1.nodes:
        cand.add(locate_on_main(x).t)
    pairs = []
    for t in sorted(cand):
        if not is_dyadic(t):
            raise NotMember("breakpoint inner angle is not dyadic")
        loc = locate_on_main(m1(outer_plus(t)))
        if loc.kind != "boundary" or loc.side != "+":
            raise NotMember("boundary of U_0 is not preserved")
        pairs.append((t, loc.t))
    try:
        xi = make_plmap(pairs)
    except ValueError as exc:
        raise NotMember(str(exc)) from exc
    if membership_class(xi) is not MembershipClass.THOMPSON_T:
        raise NotMember("induced boundary map is not in T")
    return xi


def _limb_map(m2: PLCircleMap, t: Angle) -> PLCircleMap:
    """m2 restricted to the wake of the satellite at t, moved to the model
    side [2/3, 4/3] of U_0, and the identity on [1/3, 2/3]."""
    wake = component_wake((t,))
    d = dynamical_distance((t,))
    nodes = {THIRD: THIRD, TWO_THIRDS: TWO_THIRDS}
    for x, y in m2.nodes:
        if wake.interior_contains(x):
            nodes[to_model(wake, d, x)] = to_model(wake, d, y)
    try:
        return make_plmap(nodes.items())
    except ValueError as exc:
        raise NotMember(f"wake of {t} is not mapped to itself") from exc


def decompose_to_word(m: PLCircleMap, max_depth: int = 64) -> GroupWord:
    """A word over A, B, C, iota whose outer map is m."""
    _check_member_shape(m)
    w = _decompose(m, max_depth).reduced()
    if word_to_map(w) != m:
        raise NotMember("peeling did not reproduce the map")
    return w


def _decompose(m: PLCircleMap, budget: int) -> GroupWord:
    if budget <= 0:
        raise NotMember("decomposition did not terminate")
    if m.is_identity:
        return GroupWord()
    target = act_on_component(m, ())
    p_word, _ = transitivity_element(target)
    m1 = compose(transitivity_map(target), m)
    xi = _inner_part(m1)
    m2 = compose(_extend(xi).inverse, m1)
    out = p_word.inverse() + t_word(xi)
    wakes = set()
    for seg in m2.segments():
        if seg.slope == 1 and angle(seg.y0) == angle(seg.x0):
            continue
        loc = locate_on_main(angle((seg.x0 + seg.x1) / 2))
        if loc.kind != "wake":
            raise NotMember("non-trivial piece meets the boundary of U_0")
        wakes.add(loc.t)
    for t in sorted(wakes):
        inner = _decompose(_limb_map(m2, t), budget - 1)
        conj, _ = transitivity_element((t,))
        out = out + conj.inverse() + inner + conj
    return out
