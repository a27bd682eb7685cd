"""Deterministic SVG and PNG pictures of the basilica and its lamination.

The SVG has a plane panel (filled set, rays, partition arcs) and, when a
circle layer is requested, a square disk-model panel to its right
(lamination chords, action of a group element on P_0 arcs)."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .circle import Angle
from .lamination import build_lamination, d_points, partition

PALETTE = ["#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"]


@dataclass(frozen=True)
class RenderSpec:
    view: Tuple[float, float, float, float] = (-1.8, -1.0, 1.8, 1.0)
    px: Tuple[int, int] = (360, 200)
    iters: int = 100
    escape_radius: float = 2.0
    layers: Tuple[str, ...] = ("filled",)
    fmt: str = "svg"

    def __post_init__(self) -> None:
        if self.px[0] <= 0 or self.px[1] <= 0:
            raise ValueError("resolution must be positive")
        if self.escape_radius < 2:
            raise ValueError("escape radius must be at least 2")
        if self.fmt not in ("svg", "png"):
            raise ValueError(f"unknown format {self.fmt!r}")


def parse_layers(text: str) -> Tuple[str, ...]:
    return tuple(s.strip() for s in text.split(",") if s.strip())


def _layer_arg(layers: Sequence[str], name: str) -> Optional[str]:
    for layer in layers:
        key, _, arg = layer.partition(":")
        if key == name:
            return arg
    return None


def _filled_mask(spec: RenderSpec) -> np.ndarray:
    from .geometry import escape_grid

    x0, y0, x1, y1 = spec.view
    w, h = spec.px
    xs = x0 + (np.arange(w) + 0.5) * (x1 - x0) / w
    ys = y1 - (np.arange(h) + 0.5) * (y1 - y0) / h
    return escape_grid(xs, ys, spec.iters, spec.escape_radius)


def _fmt(v: float) -> str:
    return f"{v:.3f}".rstrip("0").rstrip(".")


class _Plane:
    def __init__(self, spec: RenderSpec):
        self.x0, self.y0, self.x1, self.y1 = spec.view
        self.w, self.h = spec.px

    def __call__(self, z: complex) -> Tuple[str, str]:
        u = (z.real - self.x0) / (self.x1 - self.x0) * self.w
        v = (self.y1 - z.imag) / (self.y1 - self.y0) * self.h
        return _fmt(u), _fmt(v)


def _filled_svg(spec: RenderSpec) -> List[str]:
    mask = _filled_mask(spec)
    out = ['<g class="filled" fill="#222">']
    for row, line in enumerate(mask):
        col = 0
        n = len(line)
        while col < n:
            if line[col]:
                start = col
                while col < n and line[col]:
                    col += 1
                out.append(f'<rect x="{start}" y="{row}" width="{col - start}" height="1"/>')
            else:
                col += 1
    out.append("</g>")
    return out


def _rays_svg(spec: RenderSpec, level: int) -> List[str]:
    from .geometry import trace_rays

    plane = _Plane(spec)
    out = ['<g class="rays" fill="none" stroke="#888" stroke-width="0.6">']
    for r in trace_rays(d_points(level)):
        pts = " ".join(",".join(plane(z)) for z in r.points if abs(z) < 4)
        out.append(f'<polyline data-angle="{r.angle}" points="{pts}"/>')
    out.append("</g>")
    return out


def _partition_svg(spec: RenderSpec, level: int, refine: int = 5) -> List[str]:
    from .geometry import landing_points

    plane = _Plane(spec)
    fine = d_points(level + refine)
    land = dict(zip(fine, landing_points(fine)))
    out = ['<g class="partition" fill="none" stroke-width="1.5">']
    for i, pa in enumerate(partition(level)):
        pts = [a for a in fine if pa.arc.contains(a)]
        pts.sort(key=lambda a: (a - pa.arc.start) % 1)
        poly = " ".join(",".join(plane(land[a])) for a in pts)
        color = PALETTE[i % len(PALETTE)]
        out.append(f'<polyline class="{pa.case.value}" stroke="{color}" points="{poly}"/>')
    out.append("</g>")
    return out


def _disk_point(a: Angle, cx: float, cy: float, r: float) -> Tuple[str, str]:
    t = 2 * math.pi * float(a)
    return _fmt(cx + r * math.cos(t)), _fmt(cy - r * math.sin(t))


def _arc_path(start: Angle, end: Angle, cx: float, cy: float, r: float) -> str:
    length = (end - start) % 1 or 1
    sx, sy = _disk_point(start, cx, cy, r)
    ex, ey = _disk_point(end, cx, cy, r)
    large = 1 if length > Fraction(1, 2) else 0
    return f"M{sx},{sy} A{_fmt(r)},{_fmt(r)} 0 {large} 0 {ex},{ey}"


def lamination_svg_group(depth: int, cx: float, cy: float, r: float, hyperbolic: bool = False) -> List[str]:
    out = [f'<g class="lamination" fill="none" stroke="#333" stroke-width="0.5">']
    out.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}"/>')
    for leaf in build_lamination(depth).leaves():
        ax, ay = _disk_point(leaf.a, cx, cy, r)
        bx, by = _disk_point(leaf.b, cx, cy, r)
        if hyperbolic:
            # geodesic: circle orthogonal to the boundary through both points
            half = math.pi * float(min((leaf.b - leaf.a) % 1, (leaf.a - leaf.b) % 1))
            rad = r * math.tan(half)
            sweep = 1 if (leaf.b - leaf.a) % 1 < Fraction(1, 2) else 0
            out.append(f'<path class="leaf" d="M{ax},{ay} A{_fmt(rad)},{_fmt(rad)} 0 0 {sweep} {bx},{by}"/>')
        else:
            out.append(f'<line class="leaf" x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}"/>')
    out.append("</g>")
    return out


def _action_group(word_text: str, cx: float, cy: float, r: float) -> List[str]:
    from .group import word_to_map
    from .words import parse_word

    m = word_to_map(parse_word(word_text))
    out = [f'<g class="action" fill="none" stroke-width="4">']
    for i, pa in enumerate(partition(0)):
        color = PALETTE[i % len(PALETTE)]
        a, b = pa.arc.start, pa.arc.end
        out.append(f'<path class="source" stroke="{color}" d="{_arc_path(a, b, cx, cy, r)}"/>')
        out.append(f'<path class="image" stroke="{color}" d="{_arc_path(m(a), m(b), cx, cy, r * 0.85)}"/>')
    out.append("</g>")
    return out


def render_svg(spec: RenderSpec) -> str:
    w, h = spec.px
    layers = spec.layers
    lam = _layer_arg(layers, "lamination")
    act = _layer_arg(layers, "action")
    disk = lam is not None or act is not None
    total_w = w + (h if disk else 0)
    body: List[str] = []
    if "filled" in layers:
        body += _filled_svg(spec)
    rays = _layer_arg(layers, "rays")
    if rays is not None:
        body += _rays_svg(spec, int(rays or 2))
    part = _layer_arg(layers, "partition")
    if part is not None:
        body += _partition_svg(spec, int(part or 1))
    cx, cy, r = w + h / 2, h / 2, h * 0.45
    if lam is not None:
        body += lamination_svg_group(int(lam or 6), cx, cy, r)
    if act is not None:
        body += _action_group(act or "iota", cx, cy, r)
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{total_w}" height="{h}" '
        f'viewBox="0 0 {total_w} {h}">'
    )
    return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>'] + body + ["</svg>"]) + "\n"


def render_png(spec: RenderSpec) -> bytes:
    from PIL import Image

    mask = _filled_mask(spec)
    img = Image.fromarray(np.where(mask, 34, 255).astype(np.uint8), mode="L")
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    return buf.getvalue()


def render(spec: RenderSpec) -> bytes:
    if spec.fmt == "png":
        return render_png(spec)
    return render_svg(spec).encode()


def lamination_svg(depth: int, size: int = 400, hyperbolic: bool = False) -> str:
    body = lamination_svg_group(depth, size / 2, size / 2, size * 0.45, hyperbolic)
    head = f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">'
    return "\n".join([head] + body + ["</svg>"]) + "\n"
