"""Command-line frontend: generate, validate, audit, inspect and render
tilings in the TILING/1 format.

Exit codes: 0 success, 1 failed checks or bad input data, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .extract import asymptotic_audit, extract_disk_patch
from .generators import (GeneratorError, RecursiveSplitSpec, TwoScaleSpec,
                         convex_polygon_on_circle, gen_convex_triangulation,
                         gen_recursive_split, gen_reflected_pair,
                         gen_two_scale_periodic)
from .geometry import Point, Triangle, parse_rational
from .incidence import build_incidence, graph_audit
from .model import TilingParseError, TilingPatch, parse_tiling, serialize_tiling, side_length_range
from .radicals import fraction_decimal
from .report import AuditRecord
from .stretches import (decompose_stretches, eq1_audit, epsilon2,
                        no_shared_side_conditions, shared_side_pairs,
                        side_labels, w_audit)
from .svg import render_svg
from .validate import validate_patch


def _rationals(text: str, n: int) -> list[Fraction]:
    parts = text.split(",")
    if len(parts) != n:
        raise ValueError(f"expected {n} comma-separated rationals")
    return [parse_rational(p.strip()) for p in parts]


def _load(path: str) -> TilingPatch:
    with open(path, "rb") as fh:
        return parse_tiling(fh.read())


def _cmd_generate(args) -> int:
    if args.family == "recursive":
        coords = _rationals(args.base, 6)
        spec = RecursiveSplitSpec(
            (Point(coords[0], coords[1]), Point(coords[2], coords[3]),
             Point(coords[4], coords[5])),
            parse_rational(args.t), args.depth)
        patch = gen_recursive_split(spec)
    elif args.family == "twoscale":
        patch = gen_two_scale_periodic(TwoScaleSpec(
            parse_rational(args.b), parse_rational(args.height),
            args.m, args.n))
    elif args.family == "convex":
        poly = convex_polygon_on_circle(args.k, args.seed)
        patch = gen_convex_triangulation(poly, args.strategy, args.seed)
    else:
        coords = _rationals(args.triangle, 6)
        tri = Triangle(Point(coords[0], coords[1]), Point(coords[2], coords[3]),
                       Point(coords[4], coords[5]))
        patch = gen_reflected_pair(tri, args.kind)
    with open(args.output, "wb") as fh:
        fh.write(serialize_tiling(patch))
    print(f"wrote {len(patch.tiles)} tiles to {args.output}")
    return 0


def _cmd_validate(args) -> int:
    patch = _load(args.file)
    report = validate_patch(patch)
    sys.stdout.write(report.render())
    return 0 if report.ok else 1


def _cmd_audit(args) -> int:
    patch = _load(args.file)
    report = validate_patch(patch)
    if not report.ok:
        sys.stdout.write(report.render())
        return 1

    records: list[AuditRecord] = []
    graph = build_incidence(patch, validated=True, region=report.derived_region)
    records.append(graph_audit(graph))
    records.append(eq1_audit(graph))
    stretches, _ = decompose_stretches(graph)
    records.append(no_shared_side_conditions(graph, stretches))
    labels = side_labels(graph, stretches)
    audit = w_audit(graph, stretches, labels, unit_perimeter=args.unit_perimeter)
    records.append(audit.record)

    shared = shared_side_pairs(graph)
    summary = AuditRecord("shared-sides")
    summary.info("count", len(shared))
    for t1, t2, seg in shared:
        summary.info("pair", f"{t1} {t2} at {seg[0]}-{seg[1]}")
    if args.expect_shared:
        summary.check("expected_shared_side", bool(shared), len(shared), ">0")
    if args.expect_none:
        summary.check("expected_no_shared_sides", not shared, len(shared), 0)
    records.append(summary)

    if args.disk:
        cx, cy, r_sq = _rationals(args.disk, 3)
        extraction = extract_disk_patch(patch, Point(cx, cy), r_sq)
        info = AuditRecord("extraction")
        info.info("selected_t", extraction.t_count)
        info.info("ring_t", len(extraction.ring))
        info.info("e_full", extraction.e_full)
        info.info("e_part", extraction.e_part)
        info.info("coverage_certificate", extraction.coverage_certificate)
        records.append(info)
        records.append(asymptotic_audit(
            patch, extraction.patch, extraction.ring,
            unit_perimeter=args.unit_perimeter,
            coverage_certificate=extraction.coverage_certificate,
            r_sq=r_sq))
    else:
        records.append(asymptotic_audit(
            None, patch, [], unit_perimeter=args.unit_perimeter))

    failed = 0
    for rec in records:
        sys.stdout.write(rec.render())
        failed += len(rec.failed)
        if args.require_applicable:
            failed += len(rec.not_applicable_entries)
    return 1 if failed else 0


def _cmd_stretches(args) -> int:
    patch = _load(args.file)
    graph = build_incidence(patch)
    stretches, shared = decompose_stretches(graph)
    for st in stretches:
        print(f"stretch {st.describe()}")
    for t1, t2, seg in shared:
        print(f"shared {t1} {t2} at {seg[0]}-{seg[1]}")
    print(f"total = {len(stretches)}")
    return 0


def _cmd_stats(args) -> int:
    patch = _load(args.file)
    graph = build_incidence(patch)
    rec = AuditRecord("stats")
    rec.info("tiles", graph.t)
    rec.info("vertices", graph.v)
    rec.info("edges", graph.e)
    rec.info("v_bd", graph.v_bd)
    rec.info("v_int", graph.v_int)
    rec.info("v_star", graph.v_star)
    rec.info("e_full", graph.e_full)
    rec.info("e_part", graph.e_part)
    rec.info("area_sum", patch.tile_area_sum())
    lo, hi = side_length_range(patch, args.precision_bits)
    digits = max(12, args.precision_bits // 3)
    rec.info("min_side", f"[{fraction_decimal(lo.lo, digits)}, {fraction_decimal(lo.hi, digits)}]")
    rec.info("max_side", f"[{fraction_decimal(hi.lo, digits)}, {fraction_decimal(hi.hi, digits)}]")
    rec.info("epsilon2", f"~{epsilon2(patch).decimal_str()}")
    sys.stdout.write(rec.render())
    return 0


def _cmd_render(args) -> int:
    patch = _load(args.file)
    svg = render_svg(patch, width_px=args.width,
                     stretch_overlay=args.stretch_overlay,
                     label_long_short=args.labels)
    with open(args.output, "wb") as fh:
        fh.write(svg)
    print(f"wrote {args.output}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tritile",
        description="construct, validate and audit triangular tilings")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate a tiling family")
    gensub = gen.add_subparsers(dest="family", required=True)
    rec = gensub.add_parser("recursive")
    rec.add_argument("--base", default="0,0,1,0,0,1",
                     help="six rationals: the inner triangle")
    rec.add_argument("--t", default="2", help="expansion factor, rational > 1")
    rec.add_argument("--depth", type=int, default=1)
    two = gensub.add_parser("twoscale")
    two.add_argument("--b", default="1", help="big-triangle base")
    two.add_argument("--h", "--height", dest="height", default="1",
                     help="big-triangle height")
    two.add_argument("--m", type=int, default=3)
    two.add_argument("--n", type=int, default=3)
    con = gensub.add_parser("convex")
    con.add_argument("--k", type=int, default=5)
    con.add_argument("--seed", type=int, default=0)
    con.add_argument("--strategy", choices=("fan", "random"), default="random")
    pair = gensub.add_parser("pair")
    pair.add_argument("--triangle", default="0,0,4,0,1,3")
    pair.add_argument("--kind", choices=("line", "midpoint", "bisector"),
                      default="midpoint")
    for p in (rec, two, con, pair):
        p.add_argument("-o", "--output", required=True)

    val = sub.add_parser("validate", help="check that a file is a tiling")
    val.add_argument("file")

    aud = sub.add_parser("audit", help="run the combinatorial audits")
    aud.add_argument("file")
    aud.add_argument("--unit-perimeter", action="store_true")
    aud.add_argument("--disk", metavar="CX,CY,R2",
                     help="restrict to the open disk before auditing")
    aud.add_argument("--require-applicable", action="store_true",
                     help="treat n/a checks as failures")
    group = aud.add_mutually_exclusive_group()
    group.add_argument("--expect-shared", action="store_true")
    group.add_argument("--expect-none", action="store_true")

    stre = sub.add_parser("stretches", help="print the stretch decomposition")
    stre.add_argument("file")

    stat = sub.add_parser("stats", help="print counts and side-length range")
    stat.add_argument("file")
    stat.add_argument("--precision-bits", type=int, default=64)

    ren = sub.add_parser("render", help="write an SVG figure")
    ren.add_argument("file")
    ren.add_argument("-o", "--output", required=True)
    ren.add_argument("--width", type=int, default=800)
    ren.add_argument("--stretch-overlay", action="store_true")
    ren.add_argument("--labels", action="store_true")
    return parser


_COMMANDS = {
    "generate": _cmd_generate,
    "validate": _cmd_validate,
    "audit": _cmd_audit,
    "stretches": _cmd_stretches,
    "stats": _cmd_stats,
    "render": _cmd_render,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (TilingParseError, GeneratorError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
