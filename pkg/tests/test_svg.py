from fractions import Fraction

import pytest

from tritile import (Point, RecursiveSplitSpec, TilingPatch, Triangle,
                     gen_recursive_split, render_svg)

import fixtures

F = Fraction
P = Point.of


def test_single_tile_one_polygon():
    svg = render_svg(TilingPatch((Triangle(P(0, 0), P(1, 0), P(0, 1)),)))
    assert svg.count(b"<polygon") == 1
    assert svg.startswith(b"<?xml")
    assert svg.rstrip().endswith(b"</svg>")

def test_polygon_per_tile_in_order():
    svg = render_svg(fixtures.square_diag())
    assert svg.count(b"<polygon") == 2

def test_byte_identical_reruns():
    patch = gen_recursive_split(RecursiveSplitSpec(
        (P(0, 0), P(1, 0), P(0, 1)), F(2), 2))
    a = render_svg(patch, stretch_overlay=True, label_long_short=True)
    b = render_svg(patch, stretch_overlay=True, label_long_short=True)
    assert a == b

def test_depth2_label_counts():
    patch = gen_recursive_split(RecursiveSplitSpec(
        (P(0, 0), P(1, 0), P(0, 1)), F(2), 2))
    svg = render_svg(patch, label_long_short=True)
    # sigma_tight = 6 long labels, 12 short labels
    assert svg.count(b">l</text>") == 6
    assert svg.count(b">s</text>") == 12

def test_overlay_line_per_stretch():
    patch = gen_recursive_split(RecursiveSplitSpec(
        (P(0, 0), P(1, 0), P(0, 1)), F(2), 3))
    svg = render_svg(patch, stretch_overlay=True)
    assert svg.count(b"<line") == 9  # 3 stretches per level

def test_options_do_not_change_tiles():
    patch = fixtures.notched_split()
    plain = render_svg(patch)
    fancy = render_svg(patch, stretch_overlay=True, label_long_short=True)
    polys = [l for l in plain.splitlines() if l.startswith(b"<polygon")]
    polys2 = [l for l in fancy.splitlines() if l.startswith(b"<polygon")]
    assert polys == polys2

def test_empty_patch_rejected():
    with pytest.raises(ValueError):
        render_svg(TilingPatch(()))
