"""Words over A, B, C and iota, and synthesis of {A, B, C}-words for
elements of Thompson's group T."""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple

from .circle import HALF, angle, is_dyadic
from .errors import NotThompson
from .plmap import (
    GENERATORS,
    IDENTITY,
    MembershipClass,
    PLCircleMap,
    _canonical,
    compose,
    interpolate_lengths,
    membership_class,
    rotation,
)

IOTA = "iota"
LETTERS = ("A", "B", "C", IOTA)

Letter = Tuple[str, int]


@dataclass(frozen=True)
class GroupWord:
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        norm = []
        for name, exp in self.letters:
            if name not in LETTERS or exp not in (1, -1):
                raise ValueError(f"bad letter {name}^{exp}")
            norm.append((name, 1 if name == IOTA else exp))
        object.__setattr__(self, "letters", tuple(norm))

    def __add__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((n, -e) for n, e in reversed(self.letters)))

    def reduced(self) -> "GroupWord":
        """Cancel adjacent inverse letters (and iota iota)."""
        out: List[Letter] = []
        for name, exp in self.letters:
            if out and out[-1][0] == name and (name == IOTA or out[-1][1] == -exp):
                out.pop()
            else:
                out.append((name, exp))
        return GroupWord(tuple(out))

    def __str__(self) -> str:
        return " ".join(n if e == 1 else f"{n}^-1" for n, e in self.letters)


def parse_word(text: str) -> GroupWord:
    letters = []
    for tok in text.split():
        name, exp = tok, 1
        if tok.endswith("^-1"):
            name, exp = tok[:-3], -1
        elif tok.endswith("^1"):
            name = tok[:-2]
        if name not in LETTERS:
            raise ValueError(f"unknown letter {tok!r}")
        letters.append((name, exp))
    return GroupWord(tuple(letters))


def word(*tokens: str) -> GroupWord:
    return parse_word(" ".join(tokens))


def thompson_map(w: GroupWord) -> PLCircleMap:
    """Evaluate a word over A, B, C as an inner circle map."""
    out = IDENTITY
    for name, exp in w.letters:
        if name == IOTA:
            raise NotThompson("iota is not an element of T")
        g = GENERATORS[name]
        out = compose(out, g if exp == 1 else g.inverse)
    return out


# ---- synthesis ----------------------------------------------------------------


def _x(d: int) -> List[Letter]:
    """x_0 = A, x_d = A^{-(d-1)} B A^{d-1}: acts on [1 - 2^-d, 1] like A."""
    if d == 0:
        return [("A", 1)]
    return [("A", -1)] * (d - 1) + [("B", 1)] + [("A", 1)] * (d - 1)


def _inv(letters: Sequence[Letter]) -> List[Letter]:
    return [(n, -e) for n, e in reversed(letters)]


@lru_cache(maxsize=None)
def _x_map(d: int) -> PLCircleMap:
    # A rescaled onto [1 - 2^-d, 1], identity elsewhere
    lo, w = 1 - Fraction(1, 1 << d), Fraction(1, 1 << d)
    nodes = [(lo + w * x, lo + w * y) for x, y in GENERATORS["A"].nodes]
    if d:
        nodes.append((Fraction(0), Fraction(0)))
    return _canonical(nodes)


def _standard_breaks(f: PLCircleMap) -> List[Fraction]:
    """Points 0 = p_0 < ... < p_n = 1 cutting [0,1] into standard dyadic
    intervals that f maps linearly onto standard dyadic intervals; f fixes 0."""
    cuts = sorted(set(f.breakpoints) | {Fraction(0)}) + [Fraction(1)]
    out = [Fraction(0)]
    for x0, x1 in zip(cuts, cuts[1:]):
        slope = _slope_at(f, x0)
        p = x0
        while p < x1:
            step = Fraction(1)
            while p % step or p + step > x1:
                step /= 2
            while True:
                y = f(p)
                if y % (step * slope) == 0:
                    break
                step /= 2
            p += step
            out.append(p)
    return out


def _slope_at(f: PLCircleMap, p: Fraction) -> Fraction:
    """Slope of the segment starting at or containing p."""
    i = bisect_right(f._xs, p) - 1
    return f.slopes[i]


def _vine_word(points: Sequence[Fraction]) -> List[Letter]:
    """Word for the element of F taking the standard subdivision with the
    given cut points onto the right vine with as many intervals."""
    pts = list(points)
    w: List[Letter] = []
    d = 0
    while True:
        lo = 1 - Fraction(1, 1 << d)
        inner = [p for p in pts if lo < p < 1]
        if not inner:
            return w
        mid = 1 - Fraction(1, 1 << (d + 1))
        while any(lo < p < mid for p in pts):
            xinv = _x_map(d).inverse
            pts = [xinv(p) if p != 1 else p for p in pts]
            w = _inv(_x(d)) + w
        d += 1


def _f_word(f: PLCircleMap) -> List[Letter]:
    dom = _standard_breaks(f)
    rng = [f(p) if p != 1 else Fraction(1) for p in dom]
    return _inv(_vine_word(rng)) + _vine_word(dom)


def _shift_to_half(p: Fraction) -> PLCircleMap:
    """An element of F sending p to 1/2."""
    nodes = [(u, v) for u, v in interpolate_lengths(p, HALF)[:-1]]
    nodes += [(p + u, HALF + v) for u, v in interpolate_lengths(1 - p, HALF)[:-1]]
    return _canonical(nodes)


@lru_cache(maxsize=4096)
def _t_word_cached(f: PLCircleMap) -> Tuple[Letter, ...]:
    p = f(Fraction(0))
    if p == 0:
        return tuple(_f_word(f))
    s = _shift_to_half(p)
    c = compose(GENERATORS["C"], s)
    # c(p) = 0, so c o f fixes 0
    return tuple(_inv(_f_word(s)) + [("C", -1)] + _f_word(compose(c, f)))


def t_word(f: PLCircleMap) -> GroupWord:
    """A word over A, B, C representing f, which must lie in T."""
    if membership_class(f) is not MembershipClass.THOMPSON_T:
        raise NotThompson(f"{f} is not an element of T")
    return GroupWord(_t_word_cached(f)).reduced()


def rotation_word(r: Fraction) -> GroupWord:
    r = angle(r)
    if not is_dyadic(r):
        raise NotThompson(f"rotation by {r} is not in T")
    return t_word(rotation(r))
