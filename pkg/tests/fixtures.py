"""Shared hand-built patch fixtures with known exact counts."""

from fractions import Fraction

from tritile import Point, TilingPatch, Triangle

F = Fraction
P = Point.of


def square_diag() -> TilingPatch:
    """Unit square split by one diagonal: one shared side."""
    return TilingPatch(
        (Triangle(P(0, 0), P(1, 0), P(1, 1)), Triangle(P(0, 0), P(1, 1), P(0, 1))),
        (P(0, 0), P(1, 0), P(1, 1), P(0, 1)))


def rect_l_shape() -> TilingPatch:
    """An L-shaped region with shared sides and one partial boundary edge:
    the side (0,1)-(2,1) of the lower rectangle runs half inside (under
    the upper square) and half along the region boundary."""
    tiles = (
        Triangle(P(0, 0), P(2, 0), P(2, 1)),
        Triangle(P(0, 0), P(2, 1), P(0, 1)),
        Triangle(P(0, 1), P(1, 1), P(0, 2)),
        Triangle(P(1, 1), P(1, 2), P(0, 2)),
    )
    region = (P(0, 0), P(2, 0), P(2, 1), P(1, 1), P(1, 2), P(0, 2))
    return TilingPatch(tiles, region)


def notched_split() -> TilingPatch:
    """Depth-1 recursive split with one extra tile glued onto half of a
    boundary side: share-free, nonconvex, with a partial boundary edge and
    an improper stretch of size 2.

    Known counts: t=5, v=8, e=12, e_full=4, e_part=1, v*=4,
    sigma_tight=3, L_loose=2.
    """
    tiles = (
        Triangle(P(0, 0), P(1, 0), P(0, 1)),
        Triangle(P(-1, 0), P(2, -1), P(1, 0)),
        Triangle(P(2, -1), P(0, 2), P(0, 1)),
        Triangle(P(0, 2), P(-1, 0), P(0, 0)),
        Triangle(P(-1, 0), P(F(1, 2), F(-1, 2)), P(0, -1)),
    )
    return TilingPatch(tiles)


def offset_quad() -> TilingPatch:
    """Triangle region split along a horizontal line whose two decks break
    at different interior points: one loose proper stretch of size 4
    (plus two shared sides away from it)."""
    tiles = (
        Triangle(P(0, 0), P(1, 0), P(0, 2)),
        Triangle(P(1, 0), P(4, 0), P(0, 2)),
        Triangle(P(0, 0), P(0, -2), P(3, 0)),
        Triangle(P(3, 0), P(0, -2), P(4, 0)),
    )
    region = (P(0, -2), P(4, 0), P(0, 2))
    return TilingPatch(tiles, region)


def bowtie() -> TilingPatch:
    """Two triangles meeting at a single point: a pinched union."""
    return TilingPatch((Triangle(P(0, 0), P(1, 0), P(0, 1)),
                        Triangle(P(0, 0), P(-1, 0), P(0, -1))))


def annulus() -> TilingPatch:
    """3x3 block of split unit squares with the middle square missing."""
    tiles = []
    for x in range(3):
        for y in range(3):
            if (x, y) == (1, 1):
                continue
            a, b, c, d = P(x, y), P(x + 1, y), P(x + 1, y + 1), P(x, y + 1)
            tiles += [Triangle(a, b, c), Triangle(a, c, d)]
    return TilingPatch(tuple(tiles))
