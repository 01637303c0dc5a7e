"""Command-line front end.

Reports are line-oriented ``key = value`` records; check commands end with a
single PASS or FAIL line.  Exit status: 0 on success or PASS, 1 on validation
failure or FAIL, 2 on usage errors.  Every randomized command takes a
mandatory --seed, and output is byte-identical for identical inputs and seeds.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import __version__
from ._geom import TWO_PI
from .charts import chart_for, cut_along_forest
from .errors import ConesurfError
from .flips import (
    delaunay,
    developing_polygon,
    flip,
    flip_path,
    has_half_turn_holonomy,
    insert_segment,
    is_delaunay_edge,
    is_flippable,
)
from .hyperbolic import genus_zero_chart, ratio_scan
from .surface import (
    FlatSurface,
    isomorphic,
    load_surface,
    make_doubled_polygon,
    make_regular_4g_gon,
    make_torus,
    save_surface,
)
from .volume import (
    FOUR_TERM_SEQUENCE,
    SHORT_SEQUENCE,
    flip_density_pair,
    kernel_density,
    period_density_ratio,
    tree_change_densities,
)

PASS_TOL_FLIP = 1e-9
PASS_TOL_TREE = 1e-9
PASS_TOL_PERIOD = 1e-8
PASS_TOL_HYP = 1e-6


def _emit(out, key, value):
    if isinstance(value, float):
        value = repr(float(value))
    out.append(f"{key} = {value}")


def _header(out):
    _emit(out, "version", __version__)
    _emit(out, "density_conventions", f"{SHORT_SEQUENCE},{FOUR_TERM_SEQUENCE}")


def _parse_complex(text):
    try:
        re, im = text.split(",")
        return complex(float(re), float(im))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected re,im but got {text!r}") from exc


def _parse_edge_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a comma-separated edge list, got {text!r}") from exc


def _surface_report(out, surface: FlatSurface):
    _emit(out, "genus", surface.genus())
    _emit(out, "vertices", len(surface.vertex_ids))
    _emit(out, "triangles", len(surface.triangles))
    _emit(out, "forest_edges", len(surface.forest))
    _emit(out, "area", surface.total_area())
    for v in sorted(surface.vertex_ids):
        _emit(out, f"angle[{v}]", surface.cone_angle(v))
    total = sum(surface.cone_angle(v) for v in surface.vertex_ids)
    expected = TWO_PI * (2 * surface.genus() + len(surface.vertex_ids) - 2)
    _emit(out, "gauss_bonnet_residual", abs(total - expected))


def _cmd_make(args, out):
    if args.kind == "torus":
        if args.u is None or args.v is None:
            raise ConesurfError("make torus needs --u and --v")
        surface = make_torus(args.u, args.v)
    elif args.kind == "polygon":
        if not args.vertices:
            raise ConesurfError("make polygon needs --vertices re,im;re,im;...")
        pts = [_parse_complex(part) for part in args.vertices.split(";")]
        surface = make_doubled_polygon(pts)
    elif args.kind == "regular-polygon":
        if args.sides is None:
            raise ConesurfError("make regular-polygon needs --sides")
        import cmath

        pts = [cmath.exp(2j * math.pi * k / args.sides) for k in range(args.sides)]
        surface = make_doubled_polygon(pts)
    elif args.kind == "translation-4g":
        if args.genus is None:
            raise ConesurfError("make translation-4g needs --genus")
        surface = make_regular_4g_gon(args.genus)
    else:  # pragma: no cover - argparse restricts choices
        raise ConesurfError(f"unknown kind {args.kind}")
    _surface_report(out, surface)
    if args.output:
        save_surface(surface, args.output)
        _emit(out, "written", args.output)
    return 0


def _cmd_validate(args, out):
    surface = load_surface(args.surface)
    _surface_report(out, surface)
    return 0


def _cmd_info(args, out):
    surface = load_surface(args.surface)
    _surface_report(out, surface)
    cut, system = chart_for(surface)
    _emit(out, "cut_edges", cut.num_edges)
    _emit(out, "cut_triangles", cut.num_triangles)
    _emit(out, "cut_trees", cut.num_trees)
    _emit(out, "system_rows", cut.num_rows)
    _emit(out, "rank", system.rank)
    _emit(out, "kernel_dim", system.kernel_dim)
    _emit(out, "chart_fingerprint", system.fingerprint())
    _emit(out, "half_turn_holonomy", str(bool(has_half_turn_holonomy(surface))).lower())
    return 0


def _cmd_flip(args, out):
    surface = load_surface(args.surface)
    flipped, move = flip(surface, args.edge)
    _emit(out, "edge", move.edge)
    _emit(out, "old_vector", f"{move.old_diagonal.real!r},{move.old_diagonal.imag!r}")
    _emit(out, "new_vector", f"{move.new_diagonal.real!r},{move.new_diagonal.imag!r}")
    _emit(out, "quad", ",".join(str(q) for q in move.quad))
    if args.output:
        save_surface(flipped, args.output)
        _emit(out, "written", args.output)
    return 0


def _cmd_delaunay(args, out):
    surface = load_surface(args.surface)
    result, path = delaunay(surface)
    _emit(out, "flips", len(path))
    bad = [e for e in result.edges() if not is_delaunay_edge(result, e)]
    _emit(out, "violations", len(bad))
    if args.output:
        save_surface(result, args.output)
        _emit(out, "written", args.output)
    return 0 if not bad else 1


def _cmd_insert(args, out):
    surface = load_surface(args.surface)
    if args.dump_development:
        polygon = developing_polygon(surface, args.corner, args.vec)
        with open(args.dump_development, "w", encoding="utf-8") as fh:
            for i, p in enumerate(polygon.vertices):
                fh.write(f"{p.real!r} {p.imag!r} {polygon.corner_map[i]}\n")
        _emit(out, "development", args.dump_development)
    result, path = insert_segment(surface, args.corner, args.vec)
    _emit(out, "flips", len(path))
    present = any(abs(result.vec(h) - args.vec) <= 1e-9 * (1 + abs(args.vec))
                  for h in result.halfedges)
    _emit(out, "segment_is_edge", str(present).lower())
    if args.output:
        save_surface(result, args.output)
        _emit(out, "written", args.output)
    return 0 if present else 1


def _cmd_flip_path(args, out):
    source = load_surface(args.surface)
    target = load_surface(args.target)
    path = flip_path(source, target)
    _emit(out, "flips", len(path))
    replayed = path.replay(source)
    ok = isomorphic(replayed, target) is not None
    _emit(out, "replay_matches", str(ok).lower())
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(path.to_json() + "\n")
        _emit(out, "written", args.output)
    out.append("PASS" if ok else "FAIL")
    return 0 if ok else 1


def _cmd_cut(args, out):
    surface = load_surface(args.surface)
    cut = cut_along_forest(surface)
    _emit(out, "cut_edges", cut.num_edges)
    _emit(out, "cut_triangles", cut.num_triangles)
    _emit(out, "cut_trees", cut.num_trees)
    _emit(out, "boundary_pairs", len(cut.pairings))
    for pair in cut.pairings:
        _emit(out, f"pair[{pair.edge}]", f"{pair.a},{pair.abar},{pair.rotation!r}")
    return 0


def _cmd_chart(args, out):
    surface = load_surface(args.surface)
    cut, system = chart_for(surface)
    _emit(out, "columns", cut.num_edges)
    _emit(out, "rows", cut.num_rows)
    _emit(out, "rank", system.rank)
    _emit(out, "kernel_dim", system.kernel_dim)
    _emit(out, "chart_fingerprint", system.fingerprint())
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(system.to_json())
        _emit(out, "written", args.output)
    return 0


def _cmd_density(args, out):
    surface = load_surface(args.surface)
    _, system = chart_for(surface)
    report = kernel_density(system, system.kernel)
    _emit(out, "value", report.value)
    _emit(out, "convention", report.convention)
    _emit(out, "chart_fingerprint", report.fingerprint)
    residual = float(np.linalg.norm(system.rows @ system.kernel))
    _emit(out, "kernel_residual", residual)
    import hashlib

    frame_hash = hashlib.sha256(np.ascontiguousarray(report.frame).tobytes()).hexdigest()[:16]
    _emit(out, "frame_hash", frame_hash)
    return 0


def _cmd_check_flip_invariance(args, out):
    surface = load_surface(args.surface)
    rng = np.random.default_rng(args.seed)
    candidates = [e for e in surface.edges()
                  if e not in surface.forest and is_flippable(surface, e)]
    if not candidates:
        raise ConesurfError("no flippable edges")
    worst = 0.0
    for k in range(args.moves):
        edge = candidates[rng.integers(len(candidates))]
        report_a, report_b = flip_density_pair(surface, edge)
        deviation = abs(report_b.value / report_a.value - 1.0)
        _emit(out, f"ratio_deviation[{k}]", deviation)
        worst = max(worst, deviation)
    _emit(out, "max_deviation", worst)
    _emit(out, "tolerance", PASS_TOL_FLIP)
    ok = worst < PASS_TOL_FLIP
    out.append("PASS" if ok else "FAIL")
    return 0 if ok else 1


def _cmd_check_tree_invariance(args, out):
    surface = load_surface(args.surface)
    report_a, report_b, ratio = tree_change_densities(surface, surface.forest, args.tree)
    _emit(out, "value_a", report_a.value)
    _emit(out, "value_b", report_b.value)
    _emit(out, "ratio", ratio)
    deviation = abs(ratio - 1.0)
    _emit(out, "deviation", deviation)
    _emit(out, "tolerance", PASS_TOL_TREE)
    ok = deviation < PASS_TOL_TREE
    out.append("PASS" if ok else "FAIL")
    return 0 if ok else 1


def _cmd_compare_period(args, out):
    surface = load_surface(args.surface)
    rng = np.random.default_rng(args.seed)
    ratios, family = period_density_ratio(surface, samples=args.samples, rng=rng)
    for k, value in enumerate(ratios):
        _emit(out, f"lambda[{k}]", value)
    _emit(out, "family", ",".join(str(e) for e in family))
    low, high = min(ratios), max(ratios)
    spread = (high - low) / abs(low)
    _emit(out, "spread", spread)
    _emit(out, "tolerance", PASS_TOL_PERIOD)
    ok = spread < PASS_TOL_PERIOD
    out.append("PASS" if ok else "FAIL")
    return 0 if ok else 1


def _cmd_hyp_compare(args, out):
    surface = load_surface(args.surface)
    chart = genus_zero_chart(surface)
    rng = np.random.default_rng(args.seed)
    scan = ratio_scan(chart, args.samples, rng, tolerance=PASS_TOL_HYP)
    for k, (ratio, residual) in enumerate(zip(scan.ratios, scan.residuals)):
        _emit(out, f"ratio[{k}]", ratio)
        _emit(out, f"residual[{k}]", residual)
    _emit(out, "chart_constant", scan.chart_constant)
    _emit(out, "spread", scan.spread)
    _emit(out, "tolerance", PASS_TOL_HYP)
    out.append("PASS" if scan.passed else "FAIL")
    return 0 if scan.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conesurf",
        description="flat surfaces with cone singularities: charts, flips and densities")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_output(p):
        p.add_argument("-o", dest="output", metavar="path", default=None)

    p = sub.add_parser("make", help="construct an example surface")
    p.add_argument("kind", choices=["torus", "polygon", "regular-polygon", "translation-4g"])
    p.add_argument("--u", type=_parse_complex, default=None)
    p.add_argument("--v", type=_parse_complex, default=None)
    p.add_argument("--vertices", default=None)
    p.add_argument("--sides", type=int, default=None)
    p.add_argument("--genus", type=int, default=None)
    add_output(p)
    p.set_defaults(func=_cmd_make)

    for verb, func in (("validate", _cmd_validate), ("info", _cmd_info),
                       ("cut", _cmd_cut), ("density", _cmd_density)):
        p = sub.add_parser(verb)
        p.add_argument("surface")
        p.set_defaults(func=func)

    p = sub.add_parser("chart")
    p.add_argument("surface")
    add_output(p)
    p.set_defaults(func=_cmd_chart)

    p = sub.add_parser("flip")
    p.add_argument("surface")
    p.add_argument("--edge", type=int, required=True)
    add_output(p)
    p.set_defaults(func=_cmd_flip)

    p = sub.add_parser("delaunay")
    p.add_argument("surface")
    add_output(p)
    p.set_defaults(func=_cmd_delaunay)

    p = sub.add_parser("insert")
    p.add_argument("surface")
    p.add_argument("--corner", type=int, required=True)
    p.add_argument("--vec", type=_parse_complex, required=True)
    p.add_argument("--dump-development", dest="dump_development", default=None)
    add_output(p)
    p.set_defaults(func=_cmd_insert)

    p = sub.add_parser("flip-path")
    p.add_argument("surface")
    p.add_argument("target")
    add_output(p)
    p.set_defaults(func=_cmd_flip_path)

    p = sub.add_parser("check-flip-invariance")
    p.add_argument("surface")
    p.add_argument("--moves", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=_cmd_check_flip_invariance)

    p = sub.add_parser("check-tree-invariance")
    p.add_argument("surface")
    p.add_argument("--tree", type=_parse_edge_list, required=True)
    p.set_defaults(func=_cmd_check_tree_invariance)

    p = sub.add_parser("compare-period")
    p.add_argument("surface")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=_cmd_compare_period)

    p = sub.add_parser("hyp-compare")
    p.add_argument("surface")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=_cmd_hyp_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = []
    _header(out)
    try:
        status = args.func(args, out)
    except ConesurfError as exc:
        _emit(out, "error", type(exc).__name__)
        _emit(out, "message", str(exc))
        print("\n".join(out))
        return 1
    except (OSError, ValueError) as exc:
        _emit(out, "error", type(exc).__name__)
        _emit(out, "message", str(exc))
        print("\n".join(out))
        return 1
    print("\n".join(out))
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
