"""Patch validation: certify that a tile set is a genuine tiling.

Coverage and disjointness are certified combinatorially, not by polygon
booleans: every atomic edge must be matched by exactly two tiles on
opposite sides (or lie on the region boundary), the unmatched edges must
chain into a single, geometrically simple, counterclockwise cycle, and
the tile areas must sum to the area that cycle encloses.  For a closed
1-chain those conditions force every interior point to be covered exactly
once, so they detect overlaps, gaps, holes and pinched or disconnected
unions without any floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .geometry import Point, cross, point_on_segment_interior
from .incidence import AtomicEdge, build_soup, line_through, line_pos
from .model import TilingPatch, polygon_area

OVERLAP = "OVERLAP"
UNMATCHED_EDGE = "UNMATCHED_EDGE"
HOLE = "HOLE"
DISCONNECTED = "DISCONNECTED"
NOT_SIMPLE = "NOT_SIMPLE"
AREA_MISMATCH = "AREA_MISMATCH"
REGION_MISMATCH = "REGION_MISMATCH"
REGION_INVALID = "REGION_INVALID"
EMPTY = "EMPTY"


@dataclass(frozen=True, slots=True)
class Violation:
    kind: str
    tiles: tuple[int, ...]
    detail: str

    def describe(self) -> str:
        if self.tiles:
            return f"{self.kind} tiles={list(self.tiles)} {self.detail}"
        return f"{self.kind} {self.detail}"


@dataclass
class ValidationReport:
    ok: bool
    violations: list[Violation]
    derived_region: tuple[Point, ...] | None

    def render(self) -> str:
        lines = [f"valid = {'yes' if self.ok else 'no'}"]
        for v in self.violations:
            lines.append(f"violation: {v.describe()}")
        if self.derived_region is not None:
            lines.append(f"boundary_vertices = {len(self.derived_region)}")
        return "\n".join(lines) + "\n"


class RegionError(ValueError):
    def __init__(self, kind: str, detail: str = ""):
        super().__init__(f"{kind}: {detail}" if detail else kind)
        self.kind = kind


def elide_collinear(poly: tuple[Point, ...]) -> tuple[Point, ...]:
    """Drop vertices where the polygon does not change direction."""
    n = len(poly)
    kept = [p for i, p in enumerate(poly)
            if cross(poly[i - 1], p, poly[(i + 1) % n]) != 0]
    return tuple(kept)


def canonical_polygon(poly: tuple[Point, ...]) -> tuple[Point, ...]:
    """Collinear vertices elided, rotated to start at the smallest vertex."""
    poly = elide_collinear(poly)
    if not poly:
        return poly
    start = min(range(len(poly)), key=lambda i: poly[i].key())
    return poly[start:] + poly[:start]


def point_in_polygon(p: Point, poly: tuple[Point, ...]) -> int:
    """1 inside, 0 on the boundary, -1 outside (exact winding count)."""
    wn = 0
    n = len(poly)
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        if p == a or p == b or point_on_segment_interior(a, b, p):
            return 0
        if a.y <= p.y < b.y and cross(a, b, p) > 0:
            wn += 1
        elif b.y <= p.y < a.y and cross(a, b, p) < 0:
            wn -= 1
    return 1 if wn != 0 else -1


def _segments_cross_properly(p: Point, q: Point, r: Point, s: Point) -> bool:
    o1 = cross(p, q, r)
    o2 = cross(p, q, s)
    o3 = cross(r, s, p)
    o4 = cross(r, s, q)
    return ((o1 > 0) != (o2 > 0) and o1 != 0 and o2 != 0
            and (o3 > 0) != (o4 > 0) and o3 != 0 and o4 != 0)


def _bbox_disjoint(a1: Point, a2: Point, b1: Point, b2: Point) -> bool:
    return (max(a1.x, a2.x) < min(b1.x, b2.x)
            or max(b1.x, b2.x) < min(a1.x, a2.x)
            or max(a1.y, a2.y) < min(b1.y, b2.y)
            or max(b1.y, b2.y) < min(a1.y, a2.y))


def _directed_boundary(edge: AtomicEdge) -> tuple[Point, Point]:
    """Orient a boundary edge so its unique tile lies on the left."""
    a, b, key = edge.a, edge.b, edge.line
    _, _, sgn = edge.incidences[0]
    d = b - a
    left_normal_dot = -d.y * key[0] + d.x * key[1]
    return (a, b) if (sgn > 0) == (left_normal_dot > 0) else (b, a)


@dataclass
class _BoundaryWalk:
    cycles: list[list[Point]] = field(default_factory=list)
    problems: list[Violation] = field(default_factory=list)


def _walk_boundary(boundary: list[AtomicEdge]) -> _BoundaryWalk:
    walk = _BoundaryWalk()
    out_map: dict[Point, list[Point]] = {}
    in_count: dict[Point, int] = {}
    for edge in boundary:
        a, b = _directed_boundary(edge)
        out_map.setdefault(a, []).append(b)
        in_count[b] = in_count.get(b, 0) + 1
        in_count.setdefault(a, in_count.get(a, 0))
        out_map.setdefault(b, [])

    for p in sorted(out_map, key=Point.key):
        if len(out_map[p]) != 1 or in_count.get(p, 0) != 1:
            walk.problems.append(Violation(
                NOT_SIMPLE, (),
                f"boundary pinched at {p} (out={len(out_map[p])}, in={in_count.get(p, 0)})"))

    if walk.problems:
        return walk

    visited: set[Point] = set()
    for start in sorted(out_map, key=Point.key):
        if start in visited:
            continue
        cyc = [start]
        visited.add(start)
        cur = out_map[start][0]
        while cur != start:
            cyc.append(cur)
            visited.add(cur)
            cur = out_map[cur][0]
        walk.cycles.append(cyc)
    return walk


def _check_region_polygon(region: tuple[Point, ...]) -> list[Violation]:
    bad: list[Violation] = []
    n = len(region)
    if n < 3:
        return [Violation(REGION_INVALID, (), "fewer than 3 vertices")]
    if len(set(region)) != n:
        return [Violation(REGION_INVALID, (), "repeated vertex")]
    if polygon_area(region) <= 0:
        bad.append(Violation(REGION_INVALID, (), "not counterclockwise"))
    sides = [(region[i], region[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            a1, a2 = sides[i]
            b1, b2 = sides[j]
            if _bbox_disjoint(a1, a2, b1, b2):
                continue
            if _segments_cross_properly(a1, a2, b1, b2):
                bad.append(Violation(REGION_INVALID, (), f"sides {i} and {j} cross"))
    for p in region:
        for i, (a, b) in enumerate(sides):
            if p not in (a, b) and point_on_segment_interior(a, b, p):
                bad.append(Violation(REGION_INVALID, (), f"vertex {p} inside side {i}"))
    return bad


def _region_line_spans(region: tuple[Point, ...]):
    """Merged per-line intervals covered by the region boundary (collinear
    consecutive sides fuse into one span)."""
    spans: dict = {}
    n = len(region)
    for i in range(n):
        a, b = region[i], region[(i + 1) % n]
        key = line_through(a, b)
        ka, kb = line_pos(key, a), line_pos(key, b)
        spans.setdefault(key, []).append((min(ka, kb), max(ka, kb)))
    for key, intervals in spans.items():
        intervals.sort()
        merged = [intervals[0]]
        for lo, hi in intervals[1:]:
            if lo <= merged[-1][1]:
                merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
            else:
                merged.append((lo, hi))
        spans[key] = merged
    return spans


def validate_patch(patch: TilingPatch) -> ValidationReport:
    """Run every validity check and report all violations found."""
    violations: list[Violation] = []
    if not patch.tiles:
        return ValidationReport(False, [Violation(EMPTY, (), "patch has no tiles")], None)

    region = patch.region
    region_ok = True
    if region is not None:
        region_problems = _check_region_polygon(region)
        if region_problems:
            violations.extend(region_problems)
            region_ok = False

    soup = build_soup(patch.tiles)

    region_spans = _region_line_spans(region) if region is not None and region_ok else None
    boundary: list[AtomicEdge] = []
    for edge in soup.edges:
        n = len(edge.incidences)
        if n > 2:
            violations.append(Violation(
                OVERLAP, tuple(sorted(edge.tiles)),
                f"{n} sides stacked on edge {edge.a}-{edge.b}"))
        elif n == 2:
            if edge.incidences[0][2] == edge.incidences[1][2]:
                violations.append(Violation(
                    OVERLAP, tuple(sorted(edge.tiles)),
                    f"tiles on the same side of edge {edge.a}-{edge.b}"))
        else:
            boundary.append(edge)
            if region_spans is not None:
                spans = region_spans.get(edge.line)
                if spans is None or not any(lo <= edge.lo and edge.hi <= hi
                                            for lo, hi in spans):
                    violations.append(Violation(
                        UNMATCHED_EDGE, tuple(edge.tiles),
                        f"edge {edge.a}-{edge.b} borders one tile off the region boundary"))

    walk = _walk_boundary(boundary)
    violations.extend(walk.problems)
    geometric: list[Violation] = []
    if not walk.problems:
        geometric = _geometric_boundary_checks(boundary)
        violations.extend(geometric)

    derived: tuple[Point, ...] | None = None
    if not walk.problems and not geometric and walk.cycles:
        areas = [polygon_area(tuple(c)) for c in walk.cycles]
        if len(walk.cycles) == 1:
            derived = canonical_polygon(tuple(walk.cycles[0]))
        else:
            positive = [c for c, ar in zip(walk.cycles, areas) if ar > 0]
            for c, ar in zip(walk.cycles, areas):
                if ar <= 0:
                    violations.append(Violation(
                        HOLE, (), f"interior boundary cycle through {c[0]}"))
            if len(positive) > 1:
                kind_found = False
                for i, ci in enumerate(positive):
                    for j, cj in enumerate(positive):
                        if i != j and point_in_polygon(ci[0], tuple(cj)) >= 0:
                            violations.append(Violation(
                                OVERLAP, (),
                                f"component through {ci[0]} nested inside another"))
                            kind_found = True
                if not kind_found:
                    violations.append(Violation(
                        DISCONNECTED, (), f"{len(positive)} separate components"))

    if derived is not None:
        area_sum = patch.tile_area_sum()
        enclosed = polygon_area(derived)
        if area_sum != enclosed:
            violations.append(Violation(
                AREA_MISMATCH, (),
                f"tile areas sum to {area_sum}, boundary encloses {enclosed}"))
        if region is not None and region_ok:
            if canonical_polygon(region) != derived:
                violations.append(Violation(
                    REGION_MISMATCH, (), "derived boundary differs from region"))

    return ValidationReport(not violations, violations, derived)


def _geometric_boundary_checks(boundary: list[AtomicEdge]) -> list[Violation]:
    """Reject boundary cycles that are simple combinatorially but not
    geometrically: crossing edges mean overlapping tiles, a vertex inside
    an edge means a pinched region."""
    bad: list[Violation] = []
    for i in range(len(boundary)):
        ei = boundary[i]
        for j in range(i + 1, len(boundary)):
            ej = boundary[j]
            if ei.line == ej.line or _bbox_disjoint(ei.a, ei.b, ej.a, ej.b):
                continue
            if _segments_cross_properly(ei.a, ei.b, ej.a, ej.b):
                bad.append(Violation(
                    OVERLAP, tuple(sorted(set(ei.tiles + ej.tiles))),
                    f"boundary edges cross near {ei.a}"))
    vertices = sorted({p for e in boundary for p in (e.a, e.b)}, key=Point.key)
    for e in boundary:
        for p in vertices:
            if p in (e.a, e.b):
                continue
            if _bbox_disjoint(e.a, e.b, p, p):
                continue
            if point_on_segment_interior(e.a, e.b, p):
                bad.append(Violation(
                    NOT_SIMPLE, tuple(e.tiles),
                    f"boundary touches itself at {p}"))
    return bad


def derive_region(patch: TilingPatch) -> tuple[Point, ...]:
    """Counterclockwise boundary polygon of the tile union.

    Raises :class:`RegionError` when the union is not a simply connected
    polygon (hole, disconnection, pinch, or overlap).
    """
    report = validate_patch(patch.with_region(None))
    if report.derived_region is None or not report.ok:
        kinds = {v.kind for v in report.violations}
        for kind in (HOLE, DISCONNECTED, NOT_SIMPLE, OVERLAP, EMPTY):
            if kind in kinds:
                raise RegionError(kind, "; ".join(v.describe() for v in report.violations))
        raise RegionError(NOT_SIMPLE, "; ".join(v.describe() for v in report.violations))
    return report.derived_region
