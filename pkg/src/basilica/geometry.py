"""Numerics for f(z) = z^2 - 1: escape test, external rays, landing points."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .circle import Angle, angle, double, in_d_infinity
from .errors import NoConvergence

ALPHA = (1 - math.sqrt(5)) / 2
BETA = (1 + math.sqrt(5)) / 2

# |f'(alpha)| is only about 1.24, so rays approach alpha slowly: the ladder
# has to reach potentials far below double-precision distances.
LEVELS = 120
SUBSTEPS = 8
START_RADIUS = 1e4
TOLERANCE = 1e-6


def f(z):
    return z * z - 1


def in_filled_set(z: complex, max_iter: int = 200, escape_radius: float = 2.0) -> bool:
    if max_iter < 1:
        raise ValueError("max_iter must be positive")
    for _ in range(max_iter + 1):
        if abs(z) > escape_radius:
            return False
        z = z * z - 1
    return True


def escape_grid(xs: np.ndarray, ys: np.ndarray, max_iter: int, escape_radius: float = 2.0) -> np.ndarray:
    """Boolean mask (rows follow ys) of points that never escape."""
    z = xs[None, :] + 1j * ys[:, None]
    alive = np.ones(z.shape, dtype=bool)
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(max_iter + 1):
            alive &= np.abs(z) <= escape_radius
            z = np.where(alive, z * z - 1, z)
    return alive


def _psi(w: np.ndarray) -> np.ndarray:
    """Inverse Boettcher map near infinity for c = -1."""
    return w + 1 / (2 * w) + 1 / (8 * w ** 3)


def _orbit_closure(angles: Sequence[Angle]) -> Tuple[List[Angle], np.ndarray]:
    index: Dict[Angle, int] = {}
    todo = [angle(a) for a in angles]
    while todo:
        a = todo.pop()
        if a in index:
            continue
        index[a] = len(index)
        todo.append(double(a))
    pts = list(index)
    nxt = np.array([index[double(a)] for a in pts])
    return pts, nxt


def _ladder(pts: List[Angle], nxt: np.ndarray, levels: int, substeps: int):
    """Points of all rays at decreasing potentials; yields one array per rung."""
    theta = np.array([float(a) for a in pts])
    g0 = math.log(START_RADIUS)
    top = []
    for s in range(substeps):
        g = g0 * 2.0 ** (-s / substeps)
        top.append(_psi(np.exp(g + 2j * math.pi * theta)))
    prev_level = top
    rungs = list(top)
    current = top[-1]
    for _ in range(levels):
        level = []
        for s in range(substeps):
            root = np.sqrt(prev_level[s][nxt] + 1)
            z = np.where(np.abs(root - current) <= np.abs(-root - current), root, -root)
            level.append(z)
            current = z
        rungs.extend(level)
        prev_level = level
    return rungs


@dataclass(frozen=True)
class RayTrace:
    angle: Angle
    points: Tuple[complex, ...]
    landing: complex
    residual: float


def _cycle_landing(pts: List[Angle], nxt: np.ndarray, final: np.ndarray) -> Dict[int, complex]:
    """Refined landing points: Newton on periodic points, then exact
    pullback along preperiodic orbits by the branch nearest the trace."""
    out: Dict[int, complex] = {}
    for i in range(len(pts)):
        if i in out:
            continue
        # walk to the cycle
        seen = []
        j = i
        while j not in seen and j not in out:
            seen.append(j)
            j = int(nxt[j])
        if j not in out:
            cycle = seen[seen.index(j):]
            z = complex(final[j])
            p = len(cycle)
            for _ in range(60):
                w, dw = z, 1 + 0j
                for _ in range(p):
                    dw = 2 * w * dw
                    w = w * w - 1
                step = (w - z) / (dw - 1)
                z -= step
                if abs(step) < 1e-15:
                    break
            for k in cycle:
                out[k] = z
                z = z * z - 1
            # f maps landing(cycle[k]) to landing(cycle[k+1])
        for k in reversed(seen):
            if k in out:
                continue
            root = complex(np.sqrt(out[int(nxt[k])] + 1))
            guess = complex(final[k])
            out[k] = root if abs(root - guess) <= abs(root + guess) else -root
    return out


def trace_rays(angles: Sequence[Angle], levels: int = LEVELS, substeps: int = SUBSTEPS, tol: float = TOLERANCE) -> List[RayTrace]:
    pts, nxt = _orbit_closure(angles)
    rungs = _ladder(pts, nxt, levels, substeps)
    final = rungs[-1]
    refined = _cycle_landing(pts, nxt, final)
    index = {a: i for i, a in enumerate(pts)}
    out = []
    for a in angles:
        i = index[angle(a)]
        residual = abs(complex(final[i]) - refined[i])
        if residual > tol:
            raise NoConvergence(f"ray {a} has residual {residual:.3g} > {tol:g}")
        poly = tuple(complex(r[i]) for r in rungs[::substeps])
        out.append(RayTrace(angle(a), poly, refined[i], residual))
    return out


def trace_ray(theta: Angle, steps: int = LEVELS, tol: float = TOLERANCE) -> RayTrace:
    if steps < 1:
        raise ValueError("steps must be positive")
    return trace_rays([Fraction(theta)], levels=steps, tol=tol)[0]


def landing_points(angles: Sequence[Angle], tol: float = TOLERANCE) -> List[complex]:
    return [r.landing for r in trace_rays(angles, tol=tol)]


def landing_point(theta: Angle, tol: float = TOLERANCE) -> complex:
    theta = angle(Fraction(theta))
    if not in_d_infinity(theta):
        raise ValueError(f"{theta} is not in D_infinity")
    z = landing_points([theta], tol)[0]
    # validate: the forward orbit reaches alpha
    w, a = z, theta
    while a not in (Fraction(1, 3), Fraction(2, 3)):
        w, a = w * w - 1, double(a)
    if abs(w - ALPHA) > tol:
        raise NoConvergence(f"landing point of {theta} does not map to alpha")
    return z
