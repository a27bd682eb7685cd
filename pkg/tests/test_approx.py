import math
import random
from fractions import Fraction as F

import pytest

from basilica.approx import (
    TargetOracle,
    approximate,
    approximate_with_steps,
    distortion_estimate,
    interpolate_on,
    julia_distortion_estimate,
    sup_distance,
)
from basilica.circle import angle
from basilica.errors import NonMonotoneOnE, NotLaminationPreserving
from basilica.group import iota_map, word_to_map
from basilica.lamination import d_points, partition
from basilica.plmap import IDENTITY, piecewise_dynamical_decomposition, rotation
from basilica.words import parse_word

TARGET = word_to_map(parse_word("A iota B^-1"))


@pytest.mark.parametrize("n", range(0, 7))
def test_agrees_on_d_n(n):
    tau = approximate(TARGET, n)
    for p in d_points(n):
        assert tau(p) == TARGET(p)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_pieces_are_dynamical(n):
    tau = approximate(iota_map(), n)
    for arc, branch in piecewise_dynamical_decomposition(tau):
        # check the branch pointwise at a few interior points
        for k in range(1, 4):
            x = angle(arc.start + arc.length * F(k, 4))
            assert branch.apply(arc.start, x) == tau(x)


def test_steps_follow_the_partition():
    n = 3
    tau, steps = approximate_with_steps(TARGET, n)
    arcs = partition(n)
    assert [s.source for s in steps] == [pa.arc for pa in arcs]
    for s in steps:
        assert s.n_i in (n, n + 1)
        assert s.m_i >= 0


def test_exact_once_level_is_reached():
    for n in (4, 5):
        assert approximate(TARGET, n) == TARGET
    assert approximate(IDENTITY, 3) == IDENTITY


def test_sup_distance_is_nonincreasing():
    dists = [sup_distance(approximate(TARGET, n), TARGET, 3000) for n in range(0, 6)]
    assert all(b <= a + 1e-12 for a, b in zip(dists, dists[1:]))
    assert dists[-1] == 0


def test_sup_distance_oracle():
    # rotation against identity: constant distance
    assert sup_distance(rotation(F(1, 8)), IDENTITY, 100) == pytest.approx(1 / 8)
    assert sup_distance(rotation(F(7, 8)), IDENTITY, 100) == pytest.approx(1 / 8)


def test_numeric_target_is_snapped():
    oracle = TargetOracle.numeric(TARGET)
    tau = approximate(oracle, 3)
    assert tau == approximate(TARGET, 3)
    assert sup_distance(tau, oracle, 500) < 0.4


def test_rejects_non_preserving_targets():
    with pytest.raises(NotLaminationPreserving):
        approximate(rotation(F(1, 4)), 2)


def test_interpolate_on():
    pts = d_points(2)
    f = interpolate_on(pts, TARGET)
    assert all(f(p) == TARGET(p) for p in pts)
    with pytest.raises(NonMonotoneOnE):
        interpolate_on([F(0), F(1, 3), F(2, 3)], lambda a: angle(-a))
    with pytest.raises(ValueError):
        interpolate_on([F(0)], TARGET)


def test_distortion_of_rotation_is_one():
    est = distortion_estimate(rotation(F(1, 8)), 200, [2.0 ** -k for k in range(1, 6)], seed=3)
    assert est.max_ratio == pytest.approx(1.0)
    assert est.samples == 1000


def test_distortion_oracle_on_a_slope_change():
    # slopes 1/2 then 2 around 1/2: a symmetric triple at the kink sees ratio 4
    f = approximate(TARGET, 5)
    est = distortion_estimate(f, 500, [2.0 ** -k for k in range(2, 8)], seed=5)
    slopes = f.slopes
    assert est.max_ratio <= max(slopes) / min(slopes) + 1e-9
    again = distortion_estimate(f, 500, [2.0 ** -k for k in range(2, 8)], seed=5)
    assert again == est


def test_julia_distortion_of_identity():
    est = julia_distortion_estimate(IDENTITY, 20, seed=1, level=5)
    assert est.max_ratio == pytest.approx(1.0)
    est = julia_distortion_estimate(iota_map(), 20, seed=1, level=5)
    assert math.isfinite(est.max_ratio) and est.max_ratio >= 1


def test_julia_distortion_of_rho_is_an_isometry():
    from basilica.group import rho_map

    est = julia_distortion_estimate(rho_map(), 1000, seed=2)
    assert est.max_ratio <= 1 + 1e-6


def test_generator_a_distortion_bound():
    from basilica.plmap import generator

    est = distortion_estimate(generator("A"), 1000, [2.0 ** -k for k in range(1, 11)])
    assert est.max_ratio <= 4


def test_interpolate_rotation_on_eight_points():
    pts = [F(k, 8) for k in range(8)]
    assert interpolate_on(pts, rotation(F(1, 8))) == rotation(F(1, 8))
    assert interpolate_on(d_points(0), IDENTITY) == IDENTITY


@pytest.mark.parametrize("n", [2, 5])
def test_output_is_lamination_preserving(n):
    from basilica.lamination import preserves_lamination
    from basilica.plmap import MembershipClass, membership_class

    tau = approximate(iota_map(), n)
    assert membership_class(tau) in (MembershipClass.THOMPSON_LIKE_T_ALPHA, MembershipClass.THOMPSON_T)
    assert preserves_lamination(tau, n + 2)


def test_deep_numeric_oracle_matches_on_d6():
    deep = word_to_map(parse_word("A A A B^-1 iota A^-1 B B C iota A A A"))
    tau = approximate(TargetOracle.numeric(deep), 6)
    pts = d_points(6)
    assert len(pts) == 128
    assert all(tau(p) == deep(p) for p in pts)
