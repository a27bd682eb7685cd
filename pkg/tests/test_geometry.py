import math
import random
from fractions import Fraction as F

import numpy as np
import pytest

from basilica.circle import double
from basilica.errors import NoConvergence
from basilica.geometry import ALPHA, BETA, escape_grid, in_filled_set, landing_point, landing_points, trace_ray
from basilica.lamination import build_lamination, d_points, partner


def test_constants():
    assert ALPHA ** 2 - 1 == pytest.approx(ALPHA)
    assert BETA ** 2 - 1 == pytest.approx(BETA)


def test_filled_set():
    assert in_filled_set(0)
    assert in_filled_set(-1)
    assert not in_filled_set(3)
    assert not in_filled_set(BETA + 1e-3, max_iter=200)
    with pytest.raises(ValueError):
        in_filled_set(0, max_iter=0)


def test_escape_grid_matches_scalar_test():
    xs = np.linspace(-1.7, 1.7, 23)
    ys = np.linspace(-0.9, 0.9, 11)
    grid = escape_grid(xs, ys, 60)
    for i, y in enumerate(ys):
        for j, x in enumerate(xs):
            assert grid[i, j] == in_filled_set(complex(x, y), 60)


def test_fixed_points():
    assert abs(trace_ray(F(0)).landing - BETA) < 1e-6
    assert abs(trace_ray(F(1, 3)).landing - ALPHA) < 1e-6
    assert abs(trace_ray(F(1, 2)).landing + BETA) < 1e-6
    assert abs(landing_point(F(1, 3)) - ALPHA) < 1e-6


def test_minus_alpha():
    a, b = landing_point(F(1, 6)), landing_point(F(5, 6))
    assert abs(a + ALPHA) < 1e-6
    assert abs(a - b) < 2e-6


def test_ray_polyline_runs_inward():
    r = trace_ray(F(1, 5))
    assert abs(r.points[0]) > 100
    assert abs(r.points[-1] - r.landing) < 1e-6


def test_bad_inputs():
    with pytest.raises(ValueError):
        landing_point(F(1, 5))
    with pytest.raises(ValueError):
        trace_ray(F(1, 3), steps=0)
    with pytest.raises(NoConvergence):
        trace_ray(F(1, 3), steps=2, tol=1e-12)


def test_semiconjugacy():
    rng = random.Random(7)
    pts = rng.sample(d_points(8), 50)
    land = dict(zip(pts, landing_points(pts)))
    img = dict(zip([double(p) for p in pts], landing_points([double(p) for p in pts])))
    for p in pts:
        z = land[p]
        assert abs(z * z - 1 - img[double(p)]) < 1e-5


def test_co_landing_and_separation():
    pts = d_points(8)
    land = dict(zip(pts, landing_points(pts)))
    for leaf in build_lamination(8).leaves():
        assert abs(land[leaf.a] - land[leaf.b]) < 1e-5
    rng = random.Random(8)
    checked = 0
    while checked < 50:
        a, b = rng.sample(pts, 2)
        if partner(a) == b:
            continue
        assert abs(land[a] - land[b]) > 1e-3
        checked += 1
