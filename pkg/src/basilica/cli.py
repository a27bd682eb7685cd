"""Command line interface: ``basilica <command> ...`` or ``python -m basilica``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from .circle import format_angle, parse_angle
from .errors import BasilicaError

REPORT_VERSION = "report v1"
OUT_DIR_ENV = "BASILICA_OUT_DIR"


def _out_path(name: str) -> Path:
    p = Path(name)
    base = os.environ.get(OUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def _load_map(spec: str):
    """A plmap v1 file, ``word:<letters>``, or ``identity``."""
    from .group import word_to_map
    from .plmap import IDENTITY, loads
    from .words import parse_word

    if spec == "identity":
        return IDENTITY
    if spec.startswith("word:"):
        return word_to_map(parse_word(spec[5:]))
    return loads(Path(spec).read_text())


def _map_from_args(args):
    from .group import word_to_map
    from .words import parse_word

    if getattr(args, "word", None) is not None:
        return word_to_map(parse_word(args.word))
    if getattr(args, "map", None) is not None:
        return _load_map(args.map)
    raise SystemExit("one of --word or --map is required")


def _emit_map(m, out: Optional[str]) -> None:
    from .plmap import dumps

    text = dumps(m)
    if out:
        _out_path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _add_map_source(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--word", help="group word, e.g. 'A B^-1 iota C'")
    g.add_argument("--map", help="plmap v1 file, 'word:<letters>' or 'identity'")


# ---- commands ------------------------------------------------------------------


def cmd_eval(args) -> None:
    m = _map_from_args(args)
    print(format_angle(m(parse_angle(args.angle))))


def cmd_compose(args) -> None:
    from .plmap import compose

    _emit_map(compose(_map_from_args(args), _load_map(args.with_)), args.out)


def cmd_invert(args) -> None:
    _emit_map(_map_from_args(args).inverse, args.out)


def cmd_decompose(args) -> None:
    from .group import decompose_to_word

    print(decompose_to_word(_map_from_args(args)))


def cmd_extend(args) -> None:
    from .group import extend_inner_to_outer
    from .words import parse_word, thompson_map

    xi = thompson_map(parse_word(args.word)) if args.word is not None else _load_map(args.map)
    _emit_map(extend_inner_to_outer(xi), args.out)


def cmd_check(args) -> None:
    from .errors import NotLaminationPreserving, NotMember
    from .group import PRECHECK_DEPTH, decompose_to_word
    from .lamination import preserves_lamination
    from .plmap import membership_class

    m = _map_from_args(args)
    cls = membership_class(m)
    preserving = preserves_lamination(m, args.depth)
    member = False
    w = None
    if preserving:
        try:
            w = decompose_to_word(m)
            member = True
        except (NotMember, NotLaminationPreserving):
            member = False
    report = {
        "report": REPORT_VERSION,
        "class": cls.value,
        "lamination_preserving": preserving,
        "member": member,
    }
    if w is not None:
        report["word"] = str(w)
    print(json.dumps(report, ensure_ascii=False))


def cmd_act(args) -> None:
    from .group import act_on_component
    from .tree import format_address, parse_address

    m = _map_from_args(args)
    print(format_address(act_on_component(m, parse_address(args.address))))


def cmd_transit(args) -> None:
    from .group import transitivity_element
    from .tree import format_address, parse_address

    w, book = transitivity_element(parse_address(args.address))
    report = {
        "report": REPORT_VERSION,
        "word": str(w),
        "bookkeeping": {format_address(k): format_angle(v) for k, v in sorted(book.rotations.items())},
    }
    print(json.dumps(report))


def cmd_approximate(args) -> None:
    from .approx import DEFAULT_SEED, approximate_with_steps, distortion_estimate, sup_distance

    target = _load_map(args.target)
    tau, steps = approximate_with_steps(target, args.level)
    _emit_map(tau, args.out)
    if args.report:
        seed = DEFAULT_SEED if args.seed is None else args.seed
        est = distortion_estimate(tau, 1000, [2.0 ** -k for k in range(1, 11)], seed)
        report = {
            "report": REPORT_VERSION,
            "level": args.level,
            "seed": seed,
            "steps": [
                {"arc": [format_angle(s.source.start), format_angle(s.source.end)], "n_i": s.n_i, "M_i": s.m_i}
                for s in steps
            ],
            "sup_distance": sup_distance(tau, target, args.samples),
            "distortion": est.max_ratio,
        }
        _out_path(args.report).write_text(json.dumps(report, indent=1) + "\n")


def cmd_lamination(args) -> None:
    from .lamination import build_lamination
    from .render import lamination_svg

    if args.format == "json":
        lam = build_lamination(args.depth)
        data = {
            "report": REPORT_VERSION,
            "depth": args.depth,
            "levels": [
                [[format_angle(l.a), format_angle(l.b)] for l in sorted(level)] for level in lam.levels
            ],
        }
        text = json.dumps(data) + "\n"
    else:
        text = lamination_svg(args.depth, hyperbolic=args.hyperbolic)
    if args.out:
        _out_path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_partition(args) -> None:
    from .lamination import partition

    for pa in partition(args.level):
        print(f"{format_angle(pa.arc.start)} {format_angle(pa.arc.end)} {pa.case.value}")


def cmd_ray(args) -> None:
    from .geometry import trace_ray

    r = trace_ray(parse_angle(args.angle), tol=args.tol)
    print(json.dumps({
        "report": REPORT_VERSION,
        "angle": format_angle(r.angle),
        "landing": [r.landing.real, r.landing.imag],
        "residual": r.residual,
    }))


def cmd_render(args) -> None:
    from .render import RenderSpec, parse_layers, render

    out = _out_path(args.out)
    fmt = "png" if out.suffix.lower() == ".png" else "svg"
    view = tuple(float(v) for v in args.view.split(","))
    px = tuple(int(v) for v in args.px.lower().split("x"))
    if len(view) != 4 or len(px) != 2:
        raise ValueError("--view needs x0,y0,x1,y1 and --px needs WxH")
    spec = RenderSpec(view, px, args.iters, 2.0, parse_layers(args.layers), fmt)
    out.write_bytes(render(spec))


# ---- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="basilica", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a map at an angle")
    _add_map_source(p)
    p.add_argument("--angle", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("compose", help="compose two maps (first after second)")
    _add_map_source(p)
    p.add_argument("--with", dest="with_", required=True, help="plmap file, word:..., or identity")
    p.add_argument("--out")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("invert", help="invert a map")
    _add_map_source(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("decompose", help="write a lamination-preserving map as a word")
    _add_map_source(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("extend", help="extend an element of T from the boundary of U_0")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--word", help="word over A, B, C")
    g.add_argument("--map", help="plmap v1 file of an element of T")
    p.add_argument("--out")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("check", help="classify a map and test membership")
    _add_map_source(p)
    p.add_argument("--depth", type=int, default=8)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("act", help="image of a Fatou component address")
    _add_map_source(p)
    p.add_argument("--address", required=True, help="e.g. '()' or '(1/2,1/4)'")
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("transit", help="word taking a component to U_0")
    p.add_argument("--address", required=True)
    p.set_defaults(func=cmd_transit)

    p = sub.add_parser("approximate", help="piecewise dynamical approximation at level n")
    p.add_argument("--target", required=True, help="plmap file or word:...")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--report")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_approximate)

    p = sub.add_parser("lamination", help="leaves of the basilica lamination")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--format", choices=("svg", "json"), default="json")
    p.add_argument("--hyperbolic", action="store_true", help="draw geodesics instead of chords")
    p.add_argument("--out")
    p.set_defaults(func=cmd_lamination)

    p = sub.add_parser("partition", help="arcs of P_n with their case")
    p.add_argument("--level", type=int, required=True)
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("ray", help="trace an external ray")
    p.add_argument("--angle", required=True)
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=cmd_ray)

    p = sub.add_parser("render", help="draw the filled Julia set and overlays")
    p.add_argument("--view", default="-1.8,-1.0,1.8,1.0")
    p.add_argument("--px", default="720x400")
    p.add_argument("--iters", type=int, default=100)
    p.add_argument("--layers", default="filled")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_render)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except BasilicaError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
