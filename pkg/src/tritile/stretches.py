"""Stretch decomposition and the audits built on top of it.

A *stretch* is a minimal collinear segment that the tiling decomposes
into sides (and, along a ragged boundary, partial boundary edges) in two
different ways: one decomposition from each geometric side of the
supporting line.  Decomposition works per line: the two decks of items
covering a collinear run are cut at every position where both decks have
an item endpoint simultaneously.  A piece whose two decks are the same
single segment is not a stretch; it is either a side shared by two tiles
or a full boundary side.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .geometry import Point, cross, sq_dist
from .incidence import EdgeClass, IncidenceGraph, LineKey
from .model import TilingPatch
from .radicals import LengthExpr, Ordering
from .report import AuditRecord


class StretchClass(Enum):
    TIGHT = "tight"
    LOOSE_PROPER = "loose"
    IMPROPER = "improper"


class SideLabel(Enum):
    LONG = "long"
    SHORT = "short"
    NONE = "none"


@dataclass(frozen=True, slots=True)
class DeckItem:
    """One piece of a decomposition deck: a tile side, or the marker that
    stands in for the outside along partial boundary edges."""

    lo: Fraction
    hi: Fraction
    side: tuple[int, int] | None    # (tile, side index); None = boundary marker
    a: Point
    b: Point

    @property
    def is_side(self) -> bool:
        return self.side is not None

    def label(self) -> str:
        if self.side is None:
            return "bd"
        return f"{self.side[0]}.{self.side[1]}"


@dataclass(frozen=True)
class Stretch:
    line: LineKey
    a: Point
    b: Point
    above: tuple[DeckItem, ...]
    below: tuple[DeckItem, ...]
    size: int
    klass: StretchClass

    @property
    def side_items(self) -> list[DeckItem]:
        return [i for i in self.above + self.below if i.is_side]

    @property
    def long_item(self) -> DeckItem:
        """The single side spanning a tight stretch."""
        assert self.klass is StretchClass.TIGHT
        deck = self.above if len(self.above) == 1 else self.below
        return deck[0]

    @property
    def short_items(self) -> tuple[DeckItem, DeckItem]:
        assert self.klass is StretchClass.TIGHT
        deck = self.below if len(self.above) == 1 else self.above
        return (deck[0], deck[1])

    def describe(self) -> str:
        above = ",".join(i.label() for i in self.above)
        below = ",".join(i.label() for i in self.below)
        return (f"span={self.a}->{self.b} size={self.size} "
                f"class={self.klass.value} decks=[{above}]/[{below}]")


def _line_items(grp) -> list[DeckItem]:
    """Side items plus boundary markers, tagged by deck via sign."""
    items: list[tuple[int, DeckItem]] = []
    for ref in grp.sides:
        items.append((ref.sign, DeckItem(ref.lo, ref.hi, (ref.tile, ref.index),
                                         ref.a, ref.b)))
    for edge in grp.edges:
        if edge.boundary_class is not EdgeClass.INTERNAL:
            # the outside decomposes the run at atomic-edge granularity
            _, _, sgn = edge.incidences[0]
            items.append((-sgn, DeckItem(edge.lo, edge.hi, None, edge.a, edge.b)))
    return items


def decompose_stretches(g: IncidenceGraph) -> tuple[list[Stretch], list[tuple[int, int, tuple[Point, Point]]]]:
    """All stretches of the patch, plus the shared full sides found on the
    way (which, by definition, belong to no stretch)."""
    stretches: list[Stretch] = []
    shared: list[tuple[int, int, tuple[Point, Point]]] = []

    for key in sorted(g.soup.lines):
        grp = g.soup.lines[key]
        tagged = _line_items(grp)
        tagged.sort(key=lambda it: (it[1].lo, it[1].hi))

        # connected runs of the covered part of the line
        runs: list[list[tuple[int, DeckItem]]] = []
        run_hi: Fraction | None = None
        for sgn, item in tagged:
            if run_hi is None or item.lo > run_hi:
                runs.append([])
                run_hi = item.hi
            else:
                run_hi = max(run_hi, item.hi)
            runs[-1].append((sgn, item))

        for run in runs:
            above = sorted((it for s, it in run if s > 0), key=lambda i: i.lo)
            below = sorted((it for s, it in run if s < 0), key=lambda i: i.lo)
            lo = min(above[0].lo, below[0].lo)
            hi = max(above[-1].hi, below[-1].hi)
            cuts_a = {x for it in above for x in (it.lo, it.hi) if lo < x < hi}
            cuts_b = {x for it in below for x in (it.lo, it.hi) if lo < x < hi}
            bounds = [lo, *sorted(cuts_a & cuts_b), hi]

            ia = ib = 0
            for plo, phi in zip(bounds, bounds[1:]):
                pa: list[DeckItem] = []
                pb: list[DeckItem] = []
                while ia < len(above) and above[ia].lo < phi:
                    assert above[ia].hi <= phi, "deck item crosses a joint cut"
                    pa.append(above[ia])
                    ia += 1
                while ib < len(below) and below[ib].lo < phi:
                    assert below[ib].hi <= phi, "deck item crosses a joint cut"
                    pb.append(below[ib])
                    ib += 1
                assert pa and pb, "one-sided piece in a validated patch"
                if len(pa) == 1 and len(pb) == 1:
                    # identical decompositions: shared side or full boundary side
                    if pa[0].is_side and pb[0].is_side:
                        t1, t2 = pa[0].side[0], pb[0].side[0]
                        pair = (min(t1, t2), max(t1, t2))
                        shared.append((pair[0], pair[1], (pa[0].a, pa[0].b)))
                    continue
                n_sides = sum(1 for i in pa + pb if i.is_side)
                improper = any(not i.is_side for i in pa + pb)
                if improper:
                    klass = StretchClass.IMPROPER
                elif n_sides == 3:
                    klass = StretchClass.TIGHT
                else:
                    klass = StretchClass.LOOSE_PROPER
                a_pt = pa[0].a if pa[0].lo == plo else pb[0].a
                b_pt = pa[-1].b if pa[-1].hi == phi else pb[-1].b
                stretches.append(Stretch(key, a_pt, b_pt, tuple(pa), tuple(pb),
                                         n_sides, klass))

    return stretches, sorted(set(shared), key=lambda s: (s[0], s[1]))


def shared_side_pairs(g: IncidenceGraph) -> list[tuple[int, int, tuple[Point, Point]]]:
    """Unordered tile pairs possessing an identical full side."""
    by_segment: dict[tuple, list[int]] = {}
    for i, t in enumerate(g.tiles):
        for p, q in t.sides():
            seg = (p, q) if p.key() <= q.key() else (q, p)
            by_segment.setdefault(seg, []).append(i)
    pairs = []
    for seg, tiles in by_segment.items():
        tiles = sorted(tiles)
        for i in range(len(tiles)):
            for j in range(i + 1, len(tiles)):
                pairs.append((tiles[i], tiles[j], seg))
    return sorted(pairs, key=lambda s: (s[0], s[1]))


def side_labels(g: IncidenceGraph, stretches: list[Stretch]) -> dict[tuple[int, int], SideLabel]:
    """LONG/SHORT labels induced by the tight stretches; everything else NONE."""
    labels = {(i, s): SideLabel.NONE
              for i in range(g.t) for s in range(3)}
    for st in stretches:
        if st.klass is not StretchClass.TIGHT:
            continue
        labels[st.long_item.side] = SideLabel.LONG
        for item in st.short_items:
            labels[item.side] = SideLabel.SHORT
    return labels


def is_convex(poly: tuple[Point, ...]) -> bool:
    n = len(poly)
    return all(cross(poly[i - 1], poly[i], poly[(i + 1) % n]) > 0 for i in range(n))


def eq1_audit(g: IncidenceGraph) -> AuditRecord:
    """The convex-region vertex identity: v_bd + 2*v_int - v*_int = t + 2.

    Needs only the incidence counts, so it applies to every valid patch
    whose region is convex, shared sides or not.  When no two tiles share
    a side, also checks the corollary that forces v_bd = 3.
    """
    rec = AuditRecord("eq1-audit")
    if not is_convex(g.region):
        rec.not_applicable("vertex_identity", "region not convex")
        return rec
    lhs = g.v_bd + 2 * g.v_int - g.v_star_int
    rhs = g.t + 2
    rec.info("v_bd", g.v_bd)
    rec.info("v_int", g.v_int)
    rec.info("v_star_int", g.v_star_int)
    rec.check("vertex_identity", lhs == rhs, lhs, rhs)
    if not shared_side_pairs(g):
        rec.check("no_shared_sides_forces_triangle", g.v_bd == 3, g.v_bd, 3)
    else:
        rec.not_applicable("no_shared_sides_forces_triangle", "patch has shared sides")
    return rec


def no_shared_side_conditions(g: IncidenceGraph, stretches: list[Stretch]) -> AuditRecord:
    """The three structural facts forced on share-free tilings of a
    triangle: corner-only boundary vertices, every interior vertex
    subdividing, and every stretch tight."""
    rec = AuditRecord("share-free-triangle-conditions")
    if len(g.region) != 3:
        rec.not_applicable("conditions", "region is not a triangle")
        return rec
    if shared_side_pairs(g):
        rec.not_applicable("conditions", "patch has shared sides")
        return rec
    rec.check("i_no_vertex_on_region_sides", g.v_bd == 3, g.v_bd, 3)
    rec.check("ii_interior_vertices_subdivide", g.v_star_int == g.v_int,
              g.v_star_int, g.v_int)
    bad = sum(1 for s in stretches if s.klass is not StretchClass.TIGHT)
    rec.check("iii_all_stretches_size_3", bad == 0, bad, 0)
    return rec


def epsilon2(patch: TilingPatch) -> LengthExpr:
    """Minimum over tiles of (two shorter sides minus the longest side)."""
    if not patch.tiles:
        raise ValueError("empty patch")
    best: LengthExpr | None = None
    for t in patch.tiles:
        s1, s2, s3 = t.squared_sides()
        margin = (LengthExpr.sqrt(s1) + LengthExpr.sqrt(s2)) - LengthExpr.sqrt(s3)
        if best is None or margin.compare(best) is Ordering.LT:
            best = margin
    return best


@dataclass
class WAudit:
    applicable: bool
    sigma_tight: int
    loose_total_size: int               # alias L_loose: a count of sides
    e_full: int
    e_part: int
    epsilon2: LengthExpr
    n_long: int
    n_short: int
    w_definition: LengthExpr
    w_identity: LengthExpr
    type_counts: dict[str, int]
    contributions: list[LengthExpr]
    record: AuditRecord = field(default_factory=lambda: AuditRecord("w-audit"))

    @property
    def L_loose(self) -> int:
        return self.loose_total_size


def w_audit(g: IncidenceGraph, stretches: list[Stretch],
            labels: dict[tuple[int, int], SideLabel],
            eps2: LengthExpr | None = None, *,
            unit_perimeter: bool = False) -> WAudit:
    """Compute W by its definition and via the tight-stretch identity
    W = -eps2 * sigma_tight, and verify they agree exactly.

    The audit assumes a share-free patch (strict mode): with shared sides
    present every check is reported n/a.
    """
    rec = AuditRecord("w-audit")
    eps2 = epsilon2(g.patch) if eps2 is None else eps2
    sigma = sum(1 for s in stretches if s.klass is StretchClass.TIGHT)
    loose = sum(s.size for s in stretches if s.klass is not StretchClass.TIGHT)

    shared = shared_side_pairs(g)
    if shared:
        rec.not_applicable("w_routes_agree", "patch has shared sides")
        return WAudit(False, sigma, loose, g.e_full, g.e_part, eps2, 0, 0,
                      LengthExpr(), LengthExpr(), {}, [], rec)

    n_long = sum(1 for v in labels.values() if v is SideLabel.LONG)
    n_short = sum(1 for v in labels.values() if v is SideLabel.SHORT)
    rec.info("sigma_tight", sigma)
    rec.info("L_loose", loose)
    rec.info("e_full", g.e_full)
    rec.info("e_part", g.e_part)
    rec.info("epsilon2", f"{eps2!r} (~{eps2.decimal_str()})")
    rec.check("long_count_is_sigma", n_long == sigma, n_long, sigma)
    rec.check("short_count_is_twice_sigma", n_short == 2 * sigma, n_short, 2 * sigma)

    # per-stretch exact cancellation: the long side spans the two shorts
    third = Fraction(1, 3)
    len_diff = LengthExpr()          # total short length - total long length
    cancel_ok = True
    ties_ok = True
    for st in stretches:
        if st.klass is not StretchClass.TIGHT:
            continue
        li = st.long_item
        s1, s2 = st.short_items
        long_sq = sq_dist(li.a, li.b)
        sq1, sq2 = sq_dist(s1.a, s1.b), sq_dist(s2.a, s2.b)
        if not (long_sq > sq1 and long_sq > sq2):
            ties_ok = False
        piece = (LengthExpr.sqrt(sq1) + LengthExpr.sqrt(sq2)
                 - LengthExpr.sqrt(long_sq))
        if not piece.is_zero():
            cancel_ok = False
        len_diff = len_diff + piece
    rec.check("tight_length_cancellation", cancel_ok)
    rec.check("long_side_strictly_longest", ties_ok)

    w_def = (LengthExpr.rational(Fraction(2, 3) * n_long - third * n_short)
             - eps2 * n_long + len_diff)
    w_id = -(eps2 * sigma)
    routes = w_def.compare(w_id)
    rec.check("w_routes_agree", routes is Ordering.EQ,
              f"{w_def!r}", f"{w_id!r}")

    # classify tiles and accumulate per-tile contributions
    type_counts = {"type0": 0, "type1": 0, "type2": 0, "type3": 0, "exceptional": 0}
    contributions: list[LengthExpr] = []
    two_thirds = LengthExpr.rational(Fraction(2, 3))
    checks = {"type1_nonnegative": True, "type0_zero": True,
              "type2_bound": True, "type3_value": True,
              "exceptional_bound": True, "unit_perimeter": True}
    for i, tile in enumerate(g.tiles):
        kinds = [labels[(i, s)] for s in range(3)]
        contrib = LengthExpr()
        for s, kind in enumerate(kinds):
            p, q = tile.sides()[s]
            length = LengthExpr.sqrt(sq_dist(p, q))
            if kind is SideLabel.LONG:
                contrib = contrib + two_thirds - eps2 - length
            elif kind is SideLabel.SHORT:
                contrib = contrib + length - LengthExpr.rational(third)
        contributions.append(contrib)

        if SideLabel.NONE in kinds:
            type_counts["exceptional"] += 1
            if unit_perimeter:
                bound = tile.perimeter() * Fraction(-2, 3)
                if contrib.compare(bound) is Ordering.LT:
                    checks["exceptional_bound"] = False
            continue
        n = sum(1 for k in kinds if k is SideLabel.LONG)
        type_counts[f"type{n}"] += 1
        if n == 1 and contrib.sign() < 0:
            checks["type1_nonnegative"] = False
        if unit_perimeter:
            perim = tile.perimeter()
            if perim.compare(LengthExpr.rational(1)) is not Ordering.EQ:
                checks["unit_perimeter"] = False
            if n == 0 and not contrib.is_zero():
                checks["type0_zero"] = False
            if n == 2:
                min_side = LengthExpr.sqrt(tile.squared_sides()[0])
                bound = min_side * 2 - eps2 * 2
                if contrib.compare(bound) is Ordering.LT:
                    checks["type2_bound"] = False
            if n == 3:
                expected = perim - eps2 * 3
                if contrib.compare(expected) is not Ordering.EQ:
                    checks["type3_value"] = False

    for name, count in type_counts.items():
        rec.info(name, count)
    rec.check("type1_nonnegative", checks["type1_nonnegative"])
    if unit_perimeter:
        rec.check("unit_perimeter", checks["unit_perimeter"])
        rec.check("type0_zero", checks["type0_zero"])
        rec.check("type2_bound", checks["type2_bound"])
        rec.check("type3_value", checks["type3_value"])
        rec.check("exceptional_bound", checks["exceptional_bound"])

    return WAudit(True, sigma, loose, g.e_full, g.e_part, eps2, n_long, n_short,
                  w_def, w_id, type_counts, contributions, rec)


def composite_sides(g: IncidenceGraph) -> list[tuple[int, int, tuple[tuple[int, int], ...]]]:
    """Sides that are exactly the union of entire sides of other tiles.

    A side qualifies when the sides on the opposite deck of its line tile
    its span exactly, each lying entirely within it.
    """
    result = []
    for key in sorted(g.soup.lines):
        grp = g.soup.lines[key]
        for ref in grp.sides:
            opposite = sorted(
                (o for o in grp.sides
                 if o.sign != ref.sign and o.lo < ref.hi and o.hi > ref.lo),
                key=lambda o: o.lo)
            if not opposite:
                continue
            if any(o.lo < ref.lo or o.hi > ref.hi for o in opposite):
                continue
            pos = ref.lo
            for o in opposite:
                if o.lo != pos:
                    pos = None
                    break
                pos = o.hi
            if pos == ref.hi:
                result.append((ref.tile, ref.index,
                               tuple((o.tile, o.index) for o in opposite)))
    return sorted(result)


def neighbor_hops_to_composite(g: IncidenceGraph, tile: int) -> int | None:
    """Least number of neighbor hops from `tile` to a tile owning a
    composite side; None when no such tile exists in the patch."""
    if not 0 <= tile < g.t:
        raise IndexError(f"tile {tile} out of range")
    targets = {t for t, _, _ in composite_sides(g)}
    if not targets:
        return None
    if tile in targets:
        return 0
    adj = g.tile_adjacency()
    seen = {tile}
    frontier = [tile]
    hops = 0
    while frontier:
        hops += 1
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w in seen:
                    continue
                if w in targets:
                    return hops
                seen.add(w)
                nxt.append(w)
        frontier = nxt
    return None
