import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from basilica.circle import Arc, angle, double, halves
from basilica.errors import DepthCap, NotLaminationPoint
from basilica.lamination import (
    ArcCase,
    Leaf,
    build_lamination,
    d_gaps,
    d_points,
    inner_to_outer,
    links,
    locate_on_main,
    non_linking,
    partition,
    partner,
    preserves_lamination,
    verify_alternation,
    wake_interval,
)
from basilica.plmap import generator, IDENTITY, rotation


def brute_d_points(n):
    # iterated preimages of {1/3, 2/3}
    pts = {F(1, 3), F(2, 3)}
    for _ in range(n):
        pts = {h for p in pts for h in halves(p)}
    return sorted(pts)


def test_d_points():
    assert d_points(0) == [F(1, 3), F(2, 3)]
    assert d_points(1) == [F(1, 6), F(1, 3), F(2, 3), F(5, 6)]
    assert len(d_points(2)) == 8 and F(1, 12) in d_points(2) and F(7, 12) in d_points(2)
    for n in range(10):
        assert d_points(n) == brute_d_points(n)
    with pytest.raises(DepthCap):
        d_points(25)


def test_d_points_nested():
    for n in range(16):
        pts = d_points(n)
        assert len(pts) == 2 ** (n + 1)
        assert set(pts) <= set(d_points(n + 1))


def test_alternation():
    assert d_gaps(1) == [F(1, 6), F(1, 3), F(1, 6), F(1, 3)]
    assert d_gaps(0) == [F(1, 3), F(2, 3)]
    assert all(verify_alternation(n) for n in range(17))


def test_lamination_small_depths():
    lam = build_lamination(2)
    assert lam.levels[0] == {Leaf(F(1, 3), F(2, 3))}
    assert lam.levels[1] == {Leaf(F(1, 6), F(5, 6))}
    # the pairing {1/12, 5/12}, {7/12, 11/12} would cross {1/6, 5/6}
    assert lam.levels[2] == {Leaf(F(5, 12), F(7, 12)), Leaf(F(1, 12), F(11, 12))}
    assert links(Leaf(F(1, 12), F(5, 12)), Leaf(F(1, 6), F(5, 6)))
    assert len(build_lamination(0).leaves()) == 1


def test_partner_examples():
    assert partner(F(1, 3)) == F(2, 3)
    assert partner(F(1, 6)) == F(5, 6)
    assert partner(F(5, 12)) == F(7, 12)
    with pytest.raises(NotLaminationPoint):
        partner(F(1, 5))
    lam = build_lamination(3)
    with pytest.raises(NotLaminationPoint):
        partner(F(1, 48), lam)


def test_brute_non_linking_depth_7():
    leaves = build_lamination(7).leaves()
    assert not any(links(a, b) for a, b in itertools.combinations(leaves, 2))
    assert non_linking(leaves)


def test_stack_scan_detects_crossing():
    assert not non_linking([Leaf(0, F(1, 2)), Leaf(F(1, 4), F(3, 4))])
    assert non_linking([Leaf(0, F(1, 2)), Leaf(F(1, 8), F(3, 8))])


def test_lamination_counts_and_cover():
    lam = build_lamination(10)
    for k, level in enumerate(lam.levels):
        assert len(level) == (1 if k == 0 else 2 ** (k - 1))
    for n in range(11):
        ends = [x for l in lam.leaves(n) for x in (l.a, l.b)]
        assert sorted(ends) == d_points(n)


def test_partner_matches_levels_and_is_involution():
    lam = build_lamination(10)
    for a, b in lam.partner_map.items():
        assert partner(a) == b and partner(b) == a


def test_leaves_are_forward_invariant():
    # the image of a leaf under doubling is a leaf
    for leaf in build_lamination(8).leaves():
        a, b = double(leaf.a), double(leaf.b)
        assert a == b or partner(a) == b


def test_partition():
    p0 = partition(0)
    assert [(p.arc.start, p.arc.end, p.case) for p in p0] == [
        (F(1, 3), F(2, 3), ArcCase.LIMB),
        (F(2, 3), F(1, 3), ArcCase.LIMB),
    ]
    p1 = {(p.arc.start, p.arc.end): p.case for p in partition(1)}
    assert p1[(F(1, 6), F(1, 3))] is ArcCase.SPAN
    assert p1[(F(2, 3), F(5, 6))] is ArcCase.SPAN
    for n in range(8):
        parts = partition(n)
        assert len(parts) == 2 ** (n + 1)
        limbs = sum(p.case is ArcCase.LIMB for p in parts)
        pts = set(d_points(n))
        expected = 0
        for leaf in build_lamination(n).leaves():
            for arc in (Arc(leaf.a, leaf.b), Arc(leaf.b, leaf.a)):
                if not any(arc.interior_contains(x) for x in pts):
                    expected += 1
        assert limbs == expected


def test_preserves_lamination():
    assert preserves_lamination(IDENTITY, 8)
    assert preserves_lamination(rotation(F(1, 2)), 12)
    assert not preserves_lamination(generator("A"), 6)
    assert not preserves_lamination(rotation(F(1, 3)), 4)


def test_inner_to_outer_examples():
    assert inner_to_outer(0) == (F(1, 3), F(2, 3))
    assert set(inner_to_outer(F(1, 2))) == {F(1, 6), F(5, 6)}
    # the same substitution read on U_{-1} gives the rays at -1's root side
    assert set(inner_to_outer(F(1, 2), "U-1")) == {F(5, 12), F(7, 12)}
    assert inner_to_outer(F(1, 4)) == (F(17, 24), F(19, 24))


def test_inner_to_outer_dyadic_is_leaf():
    for k in range(1, 7):
        for u in range(1 << k):
            lo, hi = inner_to_outer(F(u, 1 << k))
            assert partner(lo) == hi


rationals = st.builds(F, st.integers(0, 500), st.integers(1, 500)).map(angle)


@given(rationals)
def test_semiconjugacy(t):
    outs = inner_to_outer(t)
    # dyadic t: the minus side goes to the minus side, plus to plus
    assert tuple(double(o, 2) for o in outs) == inner_to_outer(double(t))


def test_wake_interval():
    assert wake_interval(0) == Arc(F(1, 3), F(2, 3))
    assert wake_interval(F(1, 2)) == Arc(F(5, 6), F(1, 6))
    assert wake_interval(F(1, 4)).length == F(1, 12)
    for k in range(1, 8):
        for u in range(1, 1 << k, 2):
            assert wake_interval(F(u, 1 << k)).length == F(4, 3) / 4 ** k


def test_locate_on_main():
    assert locate_on_main(F(1, 6)).kind == "boundary"
    assert locate_on_main(F(0)).t == F(1, 2)
    assert locate_on_main(F(1, 2)).t == 0
    loc = locate_on_main(inner_to_outer(F(1, 3))[0])
    assert (loc.kind, loc.t) == ("boundary", F(1, 3))
    rng = random.Random(9)
    for _ in range(200):
        t = F(rng.randrange(1, 256), 256)
        lo, hi = inner_to_outer(t)
        assert locate_on_main(lo) == type(locate_on_main(lo))("boundary", t, "-")
        assert locate_on_main(hi).side == "+"
        mid = Arc(lo, hi).point_at(Arc(lo, hi).length / 3)
        assert locate_on_main(mid).kind == "wake" and locate_on_main(mid).t == t
