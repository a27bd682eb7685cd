"""Addresses of bounded Fatou components and their root leaves and wakes.

An address is a tuple of dyadic inner angles.  ``()`` is U_0, ``(0,)`` is
U_{-1}; ``(t,)`` is the satellite of U_0 attached at inner angle t, and
``(t1, t2, ...)`` is the satellite of ``(t1,)`` at inner angle t2 measured in
the coordinate obtained by pulling back the one of U_0 along g^d.  That
identification is realized on outer angles by the affine map A_U of the wake
W_U onto [2/3, 4/3], which agrees with g^d on W_U.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Tuple

from .circle import TWO_THIRDS, Angle, Arc, angle, ccw_length, dyadic_level, is_dyadic
from .errors import InvalidAddress, NotLaminationPoint
from .lamination import ALPHA_LEAF, Leaf, inner_to_outer, is_leaf, locate_on_main

Address = Tuple[Angle, ...]


def make_address(steps: Iterable) -> Address:
    addr = tuple(angle(Fraction(s)) for s in steps)
    for i, t in enumerate(addr):
        if not is_dyadic(t):
            raise InvalidAddress(f"step {t} is not dyadic")
        if i > 0 and t == 0:
            raise InvalidAddress("only the first step may be 0")
    return addr


def format_address(addr: Address) -> str:
    return "(" + ",".join(str(t) for t in addr) + ")"


def parse_address(text: str) -> Address:
    body = text.strip().strip("()[]").strip()
    if not body:
        return ()
    return make_address(s for s in body.replace(",", " ").split())


def step_distance(t: Angle) -> int:
    """Iterates of g taking the wake of the U_0-satellite at t onto S_0."""
    return 1 if t == 0 else 2 * dyadic_level(t) - 1


def dynamical_distance(addr: Address) -> int:
    return sum(step_distance(t) for t in addr)


@lru_cache(maxsize=None)
def component_wake(addr: Address) -> Arc:
    addr = make_address(addr)
    if not addr:
        raise InvalidAddress("U_0 has no wake")
    lo, hi = inner_to_outer(addr[0])
    first = Arc(lo, hi)
    if len(addr) == 1:
        return first
    inner = component_wake(addr[1:])
    d = step_distance(addr[0])
    return Arc(from_model(first, d, inner.start), from_model(first, d, inner.end))


def to_model(wake: Arc, d: int, theta: Angle) -> Angle:
    """A_W: the wake onto [2/3, 4/3], start to 2/3, slope 2^d."""
    return angle(TWO_THIRDS + ccw_length(wake.start, theta) * (1 << d))


def from_model(wake: Arc, d: int, phi: Angle) -> Angle:
    return angle(wake.start + ccw_length(TWO_THIRDS, phi) / (1 << d))


def wake_map(addr: Address):
    """(wake, d) describing A_U for the component at ``addr``."""
    addr = make_address(addr)
    return component_wake(addr), dynamical_distance(addr)


def leaf_from_address(addr) -> Leaf:
    w = component_wake(make_address(addr))
    return Leaf(w.start, w.end)


def address_from_leaf(leaf: Leaf) -> Address:
    """Inverse of :func:`leaf_from_address` on leaves of the lamination."""
    if not is_leaf(leaf.a, leaf.b):
        raise NotLaminationPoint(f"{leaf} is not a leaf")
    out = []
    while True:
        if leaf == ALPHA_LEAF:
            out.append(Fraction(0))
            return tuple(out)
        la, lb = locate_on_main(leaf.a), locate_on_main(leaf.b)
        if la.kind == "boundary" and lb.kind == "boundary" and la.t == lb.t:
            out.append(la.t)
            return tuple(out)
        if la.kind != "wake" or lb.kind != "wake" or la.t != lb.t:
            raise NotLaminationPoint(f"{leaf} is not inside a single wake")
        t = la.t
        wake = component_wake((t,))
        d = step_distance(t)
        out.append(t)
        leaf = Leaf(to_model(wake, d, leaf.a), to_model(wake, d, leaf.b))
