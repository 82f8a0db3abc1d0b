from fractions import Fraction

import pytest

from tritile import (LengthExpr, Ordering, Point, RecursiveSplitSpec,
                     StretchClass, SideLabel, TilingPatch, Triangle,
                     TwoScaleSpec, apply_affine, build_incidence,
                     composite_sides, decompose_stretches, epsilon2, eq1_audit,
                     gen_convex_triangulation, gen_recursive_split,
                     gen_two_scale_periodic, neighbor_hops_to_composite,
                     no_shared_side_conditions, shared_side_pairs, side_labels,
                     w_audit)
from tritile.report import Status

import fixtures
from conftest import expr_decimal

F = Fraction
P = Point.of


def brute_force_shared(patch: TilingPatch):
    """O(t^2) oracle: compare all side pairs as exact segment sets."""
    pairs = []
    for i, t1 in enumerate(patch.tiles):
        for j in range(i + 1, len(patch.tiles)):
            for a, b in t1.sides():
                for c, d in patch.tiles[j].sides():
                    if {a, b} == {c, d}:
                        pairs.append((i, j))
    return sorted(set(pairs))


def recursive(depth, t=F(2), base=(P(0, 0), P(1, 0), P(0, 1))):
    return gen_recursive_split(RecursiveSplitSpec(base, t, depth))


class TestDecompose:
    def test_square_diag_no_stretches(self):
        g = build_incidence(fixtures.square_diag())
        stretches, shared = decompose_stretches(g)
        assert stretches == []
        assert [(a, b) for a, b, _ in shared] == [(0, 1)]

    def test_depth1_three_tight(self):
        g = build_incidence(recursive(1))
        stretches, shared = decompose_stretches(g)
        assert shared == []
        assert [s.klass for s in stretches] == [StretchClass.TIGHT] * 3
        assert all(s.size == 3 for s in stretches)
        for s in stretches:
            decks = sorted((len(s.above), len(s.below)))
            assert decks == [1, 2]

    def test_rect_l_improper(self):
        g = build_incidence(fixtures.rect_l_shape())
        stretches, _ = decompose_stretches(g)
        improper = [s for s in stretches if s.klass is StretchClass.IMPROPER]
        assert len(improper) == 1
        assert improper[0].size == 2

    def test_notched_improper_size_2(self):
        g = build_incidence(fixtures.notched_split())
        stretches, shared = decompose_stretches(g)
        assert shared == []
        by_class = sorted(s.klass.value for s in stretches)
        assert by_class == ["improper"] + ["tight"] * 3
        imp = next(s for s in stretches if s.klass is StretchClass.IMPROPER)
        assert imp.size == 2

    def test_offset_quad_loose_proper(self):
        g = build_incidence(fixtures.offset_quad())
        stretches, shared = decompose_stretches(g)
        assert len(shared) == 2
        assert [s.klass for s in stretches] == [StretchClass.LOOSE_PROPER]
        assert stretches[0].size == 4
        assert (stretches[0].a, stretches[0].b) == (P(0, 0), P(4, 0))
        # the two decks break at different interior points
        above = [it.label() for it in stretches[0].above]
        below = [it.label() for it in stretches[0].below]
        assert len(above) == len(below) == 2

    def test_size_bounds(self):
        patches = [recursive(4), fixtures.rect_l_shape(), fixtures.notched_split(),
                   gen_two_scale_periodic(TwoScaleSpec(F(1), F(1), 3, 2))]
        for patch in patches:
            stretches, _ = decompose_stretches(build_incidence(patch))
            for s in stretches:
                if s.klass is StretchClass.IMPROPER:
                    assert s.size >= 2
                else:
                    assert s.size >= 3
                assert (s.klass is StretchClass.TIGHT) == (
                    s.size == 3 and all(i.is_side for i in s.above + s.below))

    def test_partition_of_sides(self):
        # every side not on the full boundary and not shared lies on
        # exactly one stretch
        for patch in (recursive(5), fixtures.notched_split(),
                      fixtures.rect_l_shape(),
                      gen_two_scale_periodic(TwoScaleSpec(F(1), F(1), 2, 2))):
            g = build_incidence(patch)
            stretches, _ = decompose_stretches(g)
            shared = shared_side_pairs(g)
            seen = [item.side for s in stretches for item in s.side_items]
            assert len(seen) == len(set(seen))
            assert len(seen) == 3 * g.t - g.e_full - 2 * len(shared)


class TestSharedSides:
    def test_square_diag_pair(self):
        g = build_incidence(fixtures.square_diag())
        pairs = shared_side_pairs(g)
        assert [(a, b) for a, b, _ in pairs] == [(0, 1)]
        assert pairs[0][2] == (P(0, 0), P(1, 1))

    @pytest.mark.parametrize("depth", [1, 2, 5])
    def test_recursive_empty(self, depth):
        g = build_incidence(recursive(depth))
        assert shared_side_pairs(g) == []

    def test_matches_brute_force_oracle(self):
        corpus = [fixtures.square_diag(), fixtures.rect_l_shape(),
                  fixtures.notched_split(), recursive(3),
                  gen_two_scale_periodic(TwoScaleSpec(F(1), F(2), 2, 2))]
        from tritile import convex_polygon_on_circle
        for seed in range(5):
            corpus.append(gen_convex_triangulation(
                convex_polygon_on_circle(6, seed), "random", seed))
        for patch in corpus:
            g = build_incidence(patch)
            got = sorted({(a, b) for a, b, _ in shared_side_pairs(g)})
            assert got == brute_force_shared(patch)

    def test_decomposition_agrees_with_direct_search(self):
        for patch in (fixtures.square_diag(), fixtures.rect_l_shape()):
            g = build_incidence(patch)
            _, from_decomp = decompose_stretches(g)
            assert ({(a, b) for a, b, _ in from_decomp}
                    == {(a, b) for a, b, _ in shared_side_pairs(g)})


class TestEq1:
    def test_single_triangle(self):
        rec = eq1_audit(build_incidence(
            TilingPatch((Triangle(P(0, 0), P(1, 0), P(0, 1)),))))
        assert rec.get("vertex_identity").value == "3 3"
        assert rec.ok

    def test_fan_square(self):
        patch = gen_convex_triangulation(
            (P(0, 0), P(2, 0), P(2, 2), P(0, 2)), "fan")
        rec = eq1_audit(build_incidence(patch))
        assert rec.get("vertex_identity").value == "4 4"
        assert rec.ok

    def test_fan_pentagon(self):
        patch = gen_convex_triangulation(
            (P(0, 0), P(4, 0), P(5, 3), P(2, 5), P(-1, 3)), "fan")
        rec = eq1_audit(build_incidence(patch))
        assert rec.get("vertex_identity").value == "5 5"

    def test_depth1(self):
        rec = eq1_audit(build_incidence(recursive(1)))
        assert rec.get("vertex_identity").value == "6 6"
        assert rec.get("no_shared_sides_forces_triangle").status is Status.PASS

    def test_nonconvex_not_applicable(self):
        rec = eq1_audit(build_incidence(fixtures.rect_l_shape()))
        assert rec.get("vertex_identity").status is Status.NA


class TestConditions:
    @pytest.mark.parametrize("depth", [0, 1, 4])
    def test_recursive_all_true(self, depth):
        g = build_incidence(recursive(depth))
        stretches, _ = decompose_stretches(g)
        rec = no_shared_side_conditions(g, stretches)
        for name in ("i_no_vertex_on_region_sides", "ii_interior_vertices_subdivide",
                     "iii_all_stretches_size_3"):
            assert rec.get(name).status is Status.PASS

    def test_shared_side_precondition_fails(self):
        # split one sliver of the depth-1 patch with a cevian: a shared side
        patch = recursive(1)
        tiles = list(patch.tiles)
        sliver = tiles.pop(1)
        assert sliver == Triangle(P(-1, 0), P(2, -1), P(1, 0))
        mid = P(F(1, 2), F(-1, 2))
        tiles += [Triangle(P(-1, 0), mid, P(1, 0)), Triangle(mid, P(2, -1), P(1, 0))]
        sub = TilingPatch(tuple(tiles), patch.region)
        g = build_incidence(sub)
        stretches, _ = decompose_stretches(g)
        rec = no_shared_side_conditions(g, stretches)
        assert rec.get("conditions").status is Status.NA

    def test_non_triangle_region_not_applicable(self):
        g = build_incidence(fixtures.square_diag())
        stretches, _ = decompose_stretches(g)
        assert no_shared_side_conditions(g, stretches).get("conditions").status \
            is Status.NA


class TestEpsilon2:
    def test_example_4_0_1_3(self):
        # sides sqrt(10) < 4 < sqrt(18): margin = sqrt(10) + 4 - sqrt(18)
        e = epsilon2(TilingPatch((Triangle(P(0, 0), P(4, 0), P(1, 3)),)))
        want = LengthExpr.sqrt(10) + LengthExpr.rational(4) - LengthExpr.sqrt(18)
        assert e.compare(want) is Ordering.EQ
        assert e.decimal_str(3) == expr_decimal(want).quantize(
            __import__("decimal").Decimal("0.001")).__str__()
        assert e.decimal_str(3) == "2.920"

    def test_isoceles_example(self):
        e = epsilon2(TilingPatch((Triangle(P(0, 0), P(2, 0), P(1, 1)),)))
        want = LengthExpr.sqrt(2, 2) - LengthExpr.rational(2)
        assert e.compare(want) is Ordering.EQ
        assert e.decimal_str(3) == "0.828"

    def test_patch_minimum(self):
        patch = recursive(3)
        e = epsilon2(patch)
        margins = []
        for t in patch.tiles:
            s1, s2, s3 = t.squared_sides()
            margins.append(LengthExpr.sqrt(s1) + LengthExpr.sqrt(s2)
                           - LengthExpr.sqrt(s3))
        assert min(expr_decimal(m) for m in margins) == expr_decimal(e)
        assert e.sign() > 0

    def test_scaling_homogeneity(self):
        patch = fixtures.notched_split()
        scaled = apply_affine(patch, ((F(3), F(0)), (F(0), F(3))))
        assert epsilon2(scaled).compare(epsilon2(patch) * 3) is Ordering.EQ


class TestLabels:
    def test_depth1_labels(self):
        g = build_incidence(recursive(1))
        stretches, _ = decompose_stretches(g)
        labels = side_labels(g, stretches)
        longs = [k for k, v in labels.items() if v is SideLabel.LONG]
        shorts = [k for k, v in labels.items() if v is SideLabel.SHORT]
        assert len(longs) == 3 and len(shorts) == 6
        # the inner triangle's sides are all short
        assert {(0, s) for s in range(3)} <= set(shorts)

    def test_long_side_spans_stretch(self):
        g = build_incidence(recursive(4))
        stretches, _ = decompose_stretches(g)
        for s in stretches:
            li = s.long_item
            assert (li.a, li.b) == (s.a, s.b) or (li.b, li.a) == (s.a, s.b)


class TestWAudit:
    def test_depth1_exact(self):
        g = build_incidence(recursive(1))
        stretches, _ = decompose_stretches(g)
        audit = w_audit(g, stretches, side_labels(g, stretches))
        assert audit.applicable
        assert audit.sigma_tight == 3 and audit.loose_total_size == 0
        assert audit.w_definition.compare(audit.epsilon2 * -3) is Ordering.EQ
        assert audit.record.ok

    @pytest.mark.parametrize("depth,t", [(2, F(2)), (4, F(3, 2)), (6, F(3))])
    def test_depth_n_counts(self, depth, t):
        g = build_incidence(recursive(depth, t))
        stretches, _ = decompose_stretches(g)
        audit = w_audit(g, stretches, side_labels(g, stretches))
        assert audit.sigma_tight == 3 * depth
        assert audit.loose_total_size == 0
        assert audit.e_full == 3
        assert audit.n_long == 3 * depth and audit.n_short == 6 * depth
        assert audit.record.ok

    def test_notched_routes_agree(self):
        g = build_incidence(fixtures.notched_split())
        stretches, _ = decompose_stretches(g)
        audit = w_audit(g, stretches, side_labels(g, stretches))
        assert audit.applicable and audit.record.ok
        assert audit.sigma_tight == 3 and audit.loose_total_size == 2

    def test_shared_sides_not_applicable(self):
        g = build_incidence(fixtures.square_diag())
        stretches, _ = decompose_stretches(g)
        audit = w_audit(g, stretches, side_labels(g, stretches))
        assert not audit.applicable
        assert audit.record.get("w_routes_agree").status is Status.NA

    def test_unit_perimeter_single_tile(self):
        # 3-4-5 right triangle scaled to perimeter exactly 1
        tile = Triangle(P(0, 0), P(F(1, 3), 0), P(0, F(1, 4)))
        patch = TilingPatch((tile,), tile.vertices)
        g = build_incidence(patch)
        stretches, _ = decompose_stretches(g)
        audit = w_audit(g, stretches, side_labels(g, stretches),
                        unit_perimeter=True)
        assert audit.record.get("unit_perimeter").status is Status.PASS
        assert audit.type_counts["exceptional"] == 1
        assert audit.record.get("exceptional_bound").status is Status.PASS
        assert audit.w_definition.is_zero()

    def test_unit_perimeter_flag_fails_on_non_unit(self):
        g = build_incidence(recursive(1))
        stretches, _ = decompose_stretches(g)
        audit = w_audit(g, stretches, side_labels(g, stretches),
                        unit_perimeter=True)
        assert audit.record.get("unit_perimeter").status is Status.FAIL

    def test_type_counts_depth3(self):
        g = build_incidence(recursive(3))
        stretches, _ = decompose_stretches(g)
        audit = w_audit(g, stretches, side_labels(g, stretches))
        assert audit.type_counts == {"type0": 1, "type1": 6, "type2": 0,
                                     "type3": 0, "exceptional": 3}
        assert len(audit.contributions) == g.t
        total = LengthExpr()
        for c in audit.contributions:
            total = total + c
        assert total.compare(audit.w_definition) is Ordering.EQ


class TestComposite:
    def test_square_diag_both_diagonals(self):
        g = build_incidence(fixtures.square_diag())
        got = composite_sides(g)
        assert len(got) == 2
        assert {entry[0] for entry in got} == {0, 1}
        assert all(len(entry[2]) == 1 for entry in got)

    def test_depth1_three_spanning_sides(self):
        g = build_incidence(recursive(1))
        got = composite_sides(g)
        assert len(got) == 3
        assert all(len(cover) == 2 for _, _, cover in got)
        assert {tile for tile, _, _ in got} == {1, 2, 3}

    def test_two_scale_interior_bases(self):
        patch = gen_two_scale_periodic(TwoScaleSpec(F(1), F(1), 3, 3))
        g = build_incidence(patch)
        got = composite_sides(g)
        covers = {(tile, idx): cover for tile, idx, cover in got}
        up_sq = patch.tiles[0].squared_sides()
        # every composite side is covered by exactly two half-scale sides
        assert got and all(len(c) == 2 for c in covers.values())
        big_with_composite = {tile for tile, _, _ in got
                              if patch.tiles[tile].squared_sides() == up_sq}
        assert big_with_composite

    def test_brute_force_cover_oracle(self):
        # independent check on the notched fixture: covered sides are
        # exactly the three spanning sliver sides
        g = build_incidence(fixtures.notched_split())
        got = composite_sides(g)
        assert {tile for tile, _, _ in got} <= {1, 2, 3, 4}
        for tile, idx, cover in got:
            p, q = fixtures.notched_split().tiles[tile].sides()[idx]
            total = sum(
                ((a.x - b.x) ** 2 + (a.y - b.y) ** 2)
                for ct, ci in cover
                for a, b in [fixtures.notched_split().tiles[ct].sides()[ci]])
            assert total  # covering sides are nondegenerate


class TestNeighborHops:
    def test_square_diag_zero(self):
        g = build_incidence(fixtures.square_diag())
        assert neighbor_hops_to_composite(g, 0) == 0
        assert neighbor_hops_to_composite(g, 1) == 0

    def test_single_not_found(self):
        g = build_incidence(TilingPatch((Triangle(P(0, 0), P(1, 0), P(0, 1)),)))
        assert neighbor_hops_to_composite(g, 0) is None

    def test_depth1_inner(self):
        g = build_incidence(recursive(1))
        assert neighbor_hops_to_composite(g, 0) in (0, 1)

    def test_unknown_tile(self):
        g = build_incidence(fixtures.square_diag())
        with pytest.raises(IndexError):
            neighbor_hops_to_composite(g, 99)
