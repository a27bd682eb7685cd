"""Approximation of lamination-preserving circle homeomorphisms by piecewise
dynamical maps, and sampled quasisymmetric distortion estimates."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from .circle import TWO_THIRDS, Angle, Arc, angle, ccw_length, circle_distance, double, in_d_infinity
from .errors import NonMonotone, NonMonotoneOnE, NotLaminationPreserving, SearchExhausted
from .group import standard_cuts
from .lamination import ArcCase, _partner, locate_on_main, outer_minus, outer_plus, partition
from .plmap import PLCircleMap, interpolate_lengths, make_plmap

DEFAULT_SEED = 20240611
SNAP_BITS = 40


@dataclass(frozen=True)
class TargetOracle:
    """A circle map given by evaluation.  Numeric oracles return floats which
    are snapped to the nearest k/(3*2^SNAP_BITS)."""

    eval: Callable[[Angle], object]
    declared_exact: bool = True

    def __call__(self, a: Angle) -> Angle:
        v = self.eval(a)
        if isinstance(v, Fraction) or isinstance(v, int):
            return angle(v)
        q = 3 << SNAP_BITS
        return angle(Fraction(round(float(v) * q), q))

    def float_eval(self, x: float) -> float:
        if self.declared_exact:
            return float(self(Fraction(x)))
        return float(self.eval(Fraction(x))) % 1.0

    @classmethod
    def exact(cls, f) -> "TargetOracle":
        return cls(f, True)

    @classmethod
    def numeric(cls, f) -> "TargetOracle":
        """Wrap a map so that it only reports floats."""
        return cls(lambda a: float(f(a)), False)


@dataclass(frozen=True)
class ApproxStep:
    source: Arc
    n_i: int
    m_i: int
    inner: Tuple[Angle, Angle]


# ---- the model bridge -------------------------------------------------------


def _bridge_nodes(t1: Angle, t2: Angle) -> List[Tuple[Angle, Angle]]:
    """Outer nodes of the map from the S_0 arc [2/3, 4/3] onto the arc from
    s0(t1+) to s0(t2-), induced by a PL map [0,1] -> [t1, t2]."""
    length = ccw_length(t1, t2) or Fraction(1)
    inner = interpolate_lengths(Fraction(1), length)
    pieces = []
    for (u0, v0), (u1, v1) in zip(inner, inner[1:]):
        pieces.append((u0, u1, t1 + v0, (v1 - v0) / (u1 - u0)))
    nodes = []
    for k, (u, v) in enumerate(standard_cuts(pieces)):
        w = angle(v)
        nodes.append((outer_plus(u), outer_plus(w)))
        if k:
            nodes.append((outer_minus(u), outer_minus(w)))
    nodes.append((outer_minus(Fraction(0)), outer_minus(angle(t2))))
    return nodes


def _search_m(ya: Angle, yb: Angle, cap: int) -> Tuple[int, Angle, Angle]:
    length = ccw_length(ya, yb)
    for m in range(cap + 1):
        if length * (1 << m) > 1:
            break
        la, lb = locate_on_main(double(ya, m)), locate_on_main(double(yb, m))
        if (
            la.kind == "boundary" and la.side == "+"
            and lb.kind == "boundary" and lb.side == "-"
        ):
            return m, la.t, lb.t
    raise SearchExhausted(f"no M <= {cap} for image arc [{ya},{yb}]")


def approximate_with_steps(target, n: int, cap: Optional[int] = None):
    if not isinstance(target, TargetOracle):
        target = TargetOracle.exact(target)
    cap = 2 * n + 16 if cap is None else cap
    nodes = {}
    steps = []
    arcs = partition(n)
    values = {}
    for pa in arcs:
        a = pa.arc.start
        values[a] = target(a)
    for pa in arcs:
        a, b = pa.arc.start, pa.arc.end
        ya, yb = values[a], values[b]
        if not (in_d_infinity(ya) and in_d_infinity(yb)):
            raise NotLaminationPreserving(f"target moves {a} or {b} off D_infinity")
        if pa.case is ArcCase.LIMB and _partner(ya) != yb:
            raise NotLaminationPreserving(f"leaf {{{a},{b}}} is not mapped to a leaf")
        n_i = n if pa.arc.length == Fraction(2, 3 << n) else n + 1
        m_i, t1, t2 = _search_m(ya, yb, cap)
        c = double(ya, m_i)
        for u, v in _bridge_nodes(t1, t2):
            x = angle(a + ccw_length(TWO_THIRDS, u) / (1 << n_i))
            y = angle(ya + ccw_length(c, v) / (1 << m_i))
            nodes[x] = y
        nodes[a] = ya
        steps.append(ApproxStep(pa.arc, n_i, m_i, (t1, t2)))
    try:
        return make_plmap(nodes.items()), steps
    except NonMonotone as exc:
        raise NotLaminationPreserving(f"target is not orientation preserving on D_{n}") from exc


def approximate(target, n: int, cap: Optional[int] = None) -> PLCircleMap:
    """tau_n: agrees with the target on D_n and is piecewise dynamical."""
    return approximate_with_steps(target, n, cap)[0]


# ---- comparisons -------------------------------------------------------------


def sup_distance(f: PLCircleMap, target, samples: int) -> float:
    if samples < 1:
        raise ValueError("samples must be positive")
    if not isinstance(target, TargetOracle):
        target = TargetOracle.exact(target)
    if target.declared_exact:
        best = Fraction(0)
        for i in range(samples):
            x = Fraction(i, samples)
            d = ccw_length(f(x), target(x))
            best = max(best, min(d, 1 - d))
        return float(best)
    return max(
        circle_distance(f.evaluate_float(i / samples), target.float_eval(i / samples))
        for i in range(samples)
    )


def interpolate_on(points: Sequence[Angle], target) -> PLCircleMap:
    if len(points) < 2:
        raise ValueError("need at least two points")
    try:
        return make_plmap((angle(e), target(angle(e))) for e in points)
    except NonMonotone as exc:
        raise NonMonotoneOnE(str(exc)) from exc


# ---- distortion ----------------------------------------------------------------


@dataclass(frozen=True)
class DistortionEstimate:
    samples: int
    max_ratio: float
    seed: int = DEFAULT_SEED


def _float_map(f) -> Callable[[float], float]:
    if hasattr(f, "evaluate_float"):
        return f.evaluate_float
    return lambda x: float(f(Fraction(x))) % 1.0


def distortion_estimate(f, triples: int, scales: Sequence[float], seed: int = DEFAULT_SEED) -> DistortionEstimate:
    """Largest ratio d(f(o),f(p)) / d(f(o),f(q)) over symmetric triples
    p = o + s, q = o - s, taken in both directions."""
    if triples < 1 or any(s <= 0 for s in scales):
        raise ValueError("need triples >= 1 and positive scales")
    fl = _float_map(f)
    rng = random.Random(seed)
    worst = 1.0
    count = 0
    for s in scales:
        for _ in range(triples):
            o = rng.random()
            fo = fl(o)
            right = (fl((o + s) % 1.0) - fo) % 1.0
            left = (fo - fl((o - s) % 1.0)) % 1.0
            if right <= 0 or left <= 0:
                continue
            worst = max(worst, right / left, left / right)
            count += 1
    return DistortionEstimate(count, worst, seed)


def julia_distortion_estimate(f: PLCircleMap, triples: int, seed: int = DEFAULT_SEED, level: int = 8) -> DistortionEstimate:
    """Three-point distortion of the induced map on the Julia set, measured
    on landing points: the ratio |F(o)-F(p)|/|F(o)-F(q)| against |o-p|/|o-q|."""
    from .errors import GeometryUnavailable

    try:
        from .geometry import landing_points
    except ImportError as exc:  # pragma: no cover
        raise GeometryUnavailable(str(exc)) from exc
    rng = random.Random(seed)
    q = 3 << level
    choices = [k for k in range(q) if k % 3]
    sample = [tuple(Fraction(k, q) for k in rng.sample(choices, 3)) for _ in range(triples)]
    angles = sorted({a for t in sample for a in t} | {f(a) for t in sample for a in t})
    pts = dict(zip(angles, landing_points(angles)))
    worst = 1.0
    used = 0
    for o, p, r in sample:
        # triples containing a co-landing pair have no plane ratio
        if min(abs(pts[o] - pts[p]), abs(pts[o] - pts[r])) < 1e-9:
            continue
        before = abs(pts[o] - pts[p]) / abs(pts[o] - pts[r])
        after = abs(pts[f(o)] - pts[f(p)]) / abs(pts[f(o)] - pts[f(r)])
        ratio = after / before
        worst = max(worst, ratio, 1 / ratio)
        used += 1
    return DistortionEstimate(used, worst, seed)
