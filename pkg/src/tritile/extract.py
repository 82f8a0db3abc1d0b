"""Disk restriction, hole filling, outer ring, and the boundary-effect
accounting audit on the extracted piece.

The disk is given by its squared radius so the open-disk intersection
predicate stays a rational comparison; the radius itself never needs to
materialize.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geometry import Point, Triangle, segment_sq_dist, sq_dist
from .incidence import EdgeClass, IncidenceGraph, build_incidence
from .model import TilingPatch
from .radicals import LengthExpr, Ordering
from .report import AuditRecord
from .stretches import (StretchClass, decompose_stretches, epsilon2,
                        shared_side_pairs)


def triangle_sq_dist(t: Triangle, p: Point) -> Fraction:
    """Exact squared distance from p to the closed triangle."""
    if t.contains(p):
        return Fraction(0)
    return min(segment_sq_dist(a, b, p) for a, b in t.sides())


def restrict_to_disk(ambient: TilingPatch, center: Point, r_sq: Fraction) -> set[int]:
    """Tiles whose closed set meets the open disk of squared radius r_sq."""
    if r_sq <= 0:
        raise ValueError("r_sq must be positive")
    return {i for i, t in enumerate(ambient.tiles)
            if triangle_sq_dist(t, center) < r_sq}


def _vertex_incident_tiles(graph: IncidenceGraph) -> dict[Point, set[int]]:
    """Every tile whose closure contains the vertex (corner or mid-side)."""
    incident: dict[Point, set[int]] = {}
    for p, tiles in graph.soup.corner_tiles.items():
        incident.setdefault(p, set()).update(tiles)
    for p, sides in graph.soup.vertex_subdivides.items():
        incident.setdefault(p, set()).update(t for t, _ in sides)
    return incident


def fill_holes(ambient: TilingPatch, selected: set[int],
               graph: IncidenceGraph | None = None) -> TilingPatch:
    """Add every ambient tile lying in a bounded complementary component
    of the selected union; the result is simply connected.

    The selected union must be connected (single-point contact counts).
    """
    if not selected:
        raise ValueError("empty selection")
    if not selected <= set(range(len(ambient.tiles))):
        raise ValueError("selection is not a subset of the ambient patch")
    if graph is None:
        graph = build_incidence(ambient)

    incident = _vertex_incident_tiles(graph)
    touch: dict[int, set[int]] = {i: set() for i in range(graph.t)}
    for tiles in incident.values():
        for a in tiles:
            touch[a].update(tiles)

    seen = {min(selected)}
    frontier = [min(selected)]
    while frontier:
        u = frontier.pop()
        for w in touch[u]:
            if w in selected and w not in seen:
                seen.add(w)
                frontier.append(w)
    if seen != selected:
        raise ValueError("selected tiles are not connected")

    # complementary components of the selection, by edge adjacency among
    # unselected tiles; a component is a hole unless it reaches the
    # ambient boundary through an atomic edge
    adj = graph.tile_adjacency()
    on_ambient_boundary = {
        e.incidences[0][0] for e in graph.soup.edges
        if e.boundary_class is not EdgeClass.INTERNAL}
    unseen = set(range(graph.t)) - selected
    result = set(selected)
    while unseen:
        start = min(unseen)
        comp = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w in unseen and w not in comp:
                    comp.add(w)
                    stack.append(w)
        unseen -= comp
        if not comp & on_ambient_boundary:
            result |= comp

    tiles = tuple(ambient.tiles[i] for i in sorted(result))
    from .validate import derive_region
    patch = TilingPatch(tiles, None, ambient.metadata)
    return patch.with_region(derive_region(patch))


def boundary_ring(ambient: TilingPatch, patch: TilingPatch,
                  graph: IncidenceGraph | None = None) -> list[int]:
    """Ambient tiles outside the patch whose closure touches its boundary
    (vertex contact included)."""
    if graph is None:
        graph = build_incidence(ambient)
    index = {t: i for i, t in enumerate(ambient.tiles)}
    try:
        inside = {index[t] for t in patch.tiles}
    except KeyError:
        raise ValueError("patch is not a tile subset of the ambient patch")

    boundary_pts: set[Point] = set()
    for e in graph.soup.edges:
        tiles = e.tiles
        if len(tiles) == 2:
            if (tiles[0] in inside) != (tiles[1] in inside):
                boundary_pts.update((e.a, e.b))
        elif tiles[0] in inside:
            boundary_pts.update((e.a, e.b))

    incident = _vertex_incident_tiles(graph)
    ring = {t for p in boundary_pts for t in incident.get(p, ())} - inside
    return sorted(ring)


@dataclass
class ExtractionResult:
    patch: TilingPatch
    ring: list[int]
    center: Point
    r_sq: Fraction
    coverage_certificate: bool
    e_full: int
    e_part: int

    @property
    def t_count(self) -> int:
        return len(self.patch.tiles)


def _disk_plus_one_covered(graph: IncidenceGraph, center: Point, r_sq: Fraction) -> bool:
    """Does the ambient region contain the concentric disk of radius r+1?

    Exact test: sq >= r_sq + 1 + 2*sqrt(r_sq) for the squared distance sq
    of every ambient boundary edge, plus the center lying in the region.
    """
    from .validate import point_in_polygon
    if point_in_polygon(center, graph.region) < 0:
        return False
    for e in graph.boundary_edges:
        sq = segment_sq_dist(e.a, e.b, center)
        rest = sq - r_sq - 1
        if rest < 0 or rest * rest < 4 * r_sq:
            return False
    return True


def extract_disk_patch(ambient: TilingPatch, center: Point, r_sq: Fraction) -> ExtractionResult:
    """Restrict to the disk, fill holes, and find the outer ring."""
    graph = build_incidence(ambient)
    selected = restrict_to_disk(ambient, center, r_sq)
    if not selected:
        raise ValueError("disk does not meet the patch")
    patch = fill_holes(ambient, selected, graph)
    ring = boundary_ring(ambient, patch, graph)
    sub = build_incidence(patch)
    return ExtractionResult(patch, ring, center, r_sq,
                            _disk_plus_one_covered(graph, center, r_sq),
                            sub.e_full, sub.e_part)


def asymptotic_audit(ambient: TilingPatch | None, patch: TilingPatch,
                     ring: list[int], *, unit_perimeter: bool = False,
                     coverage_certificate: bool | None = None,
                     r_sq: Fraction | None = None) -> AuditRecord:
    """Boundary-effect accounting on a finite piece.

    Exact checks: the side count identity 3t - e_full = 3*sigma + L_loose,
    the subdividing-vertex bound v* >= sigma + L_loose/2 (both n/a when
    shared sides are present), the boundary bound e_full * min_side <=
    boundary length, and e_part <= 3t'.  The last one rests on every
    boundary vertex belonging to a ring triangle, which fails when the
    piece reaches the edge of the known tiling, so a violation downgrades
    to n/a unless the ambient patch certifiably covers the grown disk.
    """
    rec = AuditRecord("asymptotic-audit")
    g = build_incidence(patch)
    stretches, _ = decompose_stretches(g)
    shared = shared_side_pairs(g)
    sigma = sum(1 for s in stretches if s.klass is StretchClass.TIGHT)
    loose = sum(s.size for s in stretches if s.klass is not StretchClass.TIGHT)
    t = g.t
    t_prime = len(ring)
    eps2 = epsilon2(patch)

    min_side_sq = min(s for tile in patch.tiles for s in tile.squared_sides())
    min_area = min(tile.area for tile in patch.tiles)
    boundary_len = LengthExpr()
    for e in g.boundary_edges:
        boundary_len = boundary_len + LengthExpr.sqrt(sq_dist(e.a, e.b))

    rec.info("t", t)
    rec.info("t_prime", t_prime)
    rec.info("e_full", g.e_full)
    rec.info("e_part", g.e_part)
    rec.info("sigma_tight", sigma)
    rec.info("L_loose", loose)
    rec.info("v_star", g.v_star)
    rec.info("min_area", min_area)
    rec.info("min_side_sq", min_side_sq)
    rec.info("epsilon2", f"{eps2!r} (~{eps2.decimal_str()})")
    rec.info("boundary_length", f"~{boundary_len.decimal_str()}")
    if r_sq is not None:
        rec.info("t_over_r_sq", Fraction(t) / r_sq)
        rec.info("t_prime_sq_over_r_sq", Fraction(t_prime ** 2) / r_sq)

    if shared:
        rec.not_applicable("side_count_identity", "patch has shared sides")
        rec.not_applicable("subdividing_vertex_bound", "patch has shared sides")
    else:
        lhs, rhs = 3 * t - g.e_full, 3 * sigma + loose
        rec.check("side_count_identity", lhs == rhs, lhs, rhs)
        lhs, rhs = 2 * g.v_star, 2 * sigma + loose
        rec.check("subdividing_vertex_bound", lhs >= rhs, lhs, rhs)

    min_side = LengthExpr.sqrt(min_side_sq)
    lhs_expr = min_side * g.e_full
    rec.check("full_boundary_bound",
              lhs_expr.compare(boundary_len) is not Ordering.GT,
              f"{g.e_full}*min_side", f"~{boundary_len.decimal_str()}")

    part_ok = g.e_part <= 3 * t_prime
    if part_ok:
        rec.check("partial_boundary_bound", True, g.e_part, 3 * t_prime)
    elif coverage_certificate:
        rec.check("partial_boundary_bound", False, g.e_part, 3 * t_prime)
    else:
        rec.not_applicable(
            "partial_boundary_bound",
            f"{g.e_part} > {3 * t_prime} but the ring is truncated by the ambient boundary")

    if unit_perimeter:
        one = LengthExpr.rational(1)
        perims_ok = all(tile.perimeter().compare(one) is Ordering.EQ
                        for tile in patch.tiles)
        rec.check("unit_perimeter", perims_ok)
        # every side longer than four times the smallest area
        side_ok = min_side_sq > 16 * min_area * min_area
        rec.check("side_exceeds_4_min_area", side_ok,
                  min_side_sq, 16 * min_area * min_area)
        # areas at most sqrt(3)/36, squared to stay rational
        worst = max(tile.area for tile in patch.tiles)
        rec.check("area_at_most_equilateral", 1296 * worst * worst <= 3,
                  1296 * worst * worst, 3)
        unit_lhs = 4 * g.e_full * min_area
        if unit_lhs <= t_prime:
            rec.check("full_boundary_bound_unit", True, unit_lhs, t_prime)
        elif coverage_certificate:
            rec.check("full_boundary_bound_unit", False, unit_lhs, t_prime)
        else:
            rec.not_applicable("full_boundary_bound_unit",
                               "ring truncated by the ambient boundary")
    return rec
