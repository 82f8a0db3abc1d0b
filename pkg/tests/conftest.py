"""Shared fixtures and independent numeric oracles.

The oracles here deliberately avoid the library's own arithmetic paths:
decimal evaluation uses the stdlib Decimal square root, area uses a raw
shoelace sum, and the radical zero test multiplies out sign conjugates
symbolically.
"""

import random
from decimal import Decimal, getcontext
from fractions import Fraction

import pytest

from tritile import Point, Triangle

getcontext().prec = 90


def dec(fr: Fraction) -> Decimal:
    return Decimal(fr.numerator) / Decimal(fr.denominator)


def expr_decimal(expr) -> Decimal:
    """High-precision decimal value of a LengthExpr, via Decimal.sqrt."""
    total = Decimal(0)
    for r, c in expr.terms:
        total += dec(c) * dec(r).sqrt()
    return total


def sqrt_sum_decimal(squares) -> Decimal:
    return sum((dec(Fraction(s)).sqrt() for s in squares), Decimal(0))


def conjugate_product(expr) -> Fraction:
    """Product of all sign conjugates of sum(c_i sqrt(r_i)), flipping each
    radical independently; a rational number, zero whenever the expression
    is zero.  Computed symbolically in the algebra Q[x_i]/(x_i^2 = r_i),
    elements as {frozenset of radical indices: coefficient}.
    """
    terms = [(r, c) for r, c in expr.terms]
    k = len(terms)
    product = {frozenset(): Fraction(1)}
    for signs in range(1 << k):
        factor = {}
        for i, (r, c) in enumerate(terms):
            coeff = c if not (signs >> i) & 1 else -c
            key = frozenset() if r == 1 else frozenset([i])
            factor[key] = factor.get(key, Fraction(0)) + coeff
        nxt = {}
        for mono1, c1 in product.items():
            for mono2, c2 in factor.items():
                coeff = c1 * c2
                for i in mono1 & mono2:
                    coeff *= terms[i][0]
                mono = mono1 ^ mono2
                nxt[mono] = nxt.get(mono, Fraction(0)) + coeff
        product = {m: c for m, c in nxt.items() if c != 0}
    assert set(product) <= {frozenset()}, "conjugate product must be rational"
    return product.get(frozenset(), Fraction(0))


def shoelace(points) -> Fraction:
    """Independent signed-area oracle on raw (x, y) pairs."""
    total = Fraction(0)
    n = len(points)
    for i in range(n):
        x1, y1 = points[i]
        x2, y2 = points[(i + 1) % n]
        total += x1 * y2 - x2 * y1
    return total / 2


def rand_fraction(rng: random.Random, span: int = 40, den: int = 24) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def rand_point(rng: random.Random, span: int = 40, den: int = 24) -> Point:
    return Point(rand_fraction(rng, span, den), rand_fraction(rng, span, den))


def rand_triangle(rng: random.Random, scalene: bool = False) -> Triangle:
    while True:
        a, b, c = (rand_point(rng) for _ in range(3))
        try:
            t = Triangle(a, b, c)
        except ValueError:
            continue
        if scalene and len(set(t.squared_sides())) != 3:
            continue
        return t


@pytest.fixture
def rng():
    return random.Random(20260808)
