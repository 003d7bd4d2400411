"""Exact rational geometry primitives."""

from fractions import Fraction

from hypothesis import given, strategies as st

from collinear.geom import (
    F, collinear, line_intersection, line_through, on_segment, orient,
    point_in_triangle, rational_direction_distinct, rotate,
    segments_cross, simplest_between, unrotate,
)

frac = st.fractions(min_value=-1000, max_value=1000, max_denominator=50)


def P(x, y):
    return (F(x), F(y))


def test_orient_basic():
    assert orient(P(0, 0), P(1, 0), P(0, 1)) == 1
    assert orient(P(0, 0), P(0, 1), P(1, 0)) == -1
    assert orient(P(0, 0), P(1, 1), P(2, 2)) == 0


def test_collinear_and_on_segment():
    assert collinear(P(0, 0), P(2, 2), P(1, 1))
    assert on_segment(P(1, 1), P(0, 0), P(2, 2))
    assert not on_segment(P(3, 3), P(0, 0), P(2, 2))
    assert on_segment(P(0, 0), P(0, 0), P(2, 2))


def test_segments_cross():
    # proper crossing
    assert segments_cross(P(0, 0), P(2, 2), P(0, 2), P(2, 0))
    # shared endpoint is not a crossing
    assert not segments_cross(P(0, 0), P(1, 1), P(1, 1), P(2, 0))
    # disjoint
    assert not segments_cross(P(0, 0), P(1, 0), P(0, 1), P(1, 1))
    # T-contact (endpoint interior to other segment) counts as a crossing
    assert segments_cross(P(0, 0), P(2, 0), P(1, 0), P(1, 1))
    # collinear overlap counts
    assert segments_cross(P(0, 0), P(2, 0), P(1, 0), P(3, 0))
    # collinear but disjoint does not
    assert not segments_cross(P(0, 0), P(1, 0), P(2, 0), P(3, 0))


def test_line_intersection():
    l1 = line_through(P(0, 0), P(2, 2))
    l2 = line_through(P(0, 2), P(2, 0))
    assert line_intersection(l1, l2) == P(1, 1)
    l3 = line_through(P(0, 1), P(2, 3))
    assert line_intersection(l1, l3) is None  # parallel


def test_point_in_triangle():
    a, b, c = P(0, 0), P(4, 0), P(0, 4)
    assert point_in_triangle(P(1, 1), a, b, c, strict=True)
    assert not point_in_triangle(P(2, 0), a, b, c, strict=True)
    assert point_in_triangle(P(2, 0), a, b, c, strict=False)
    assert not point_in_triangle(P(5, 5), a, b, c, strict=False)


@given(frac, frac)
def test_simplest_between_is_inside(a, b):
    lo, hi = (a, b) if a < b else (b, a)
    if lo == hi:
        return
    x = simplest_between(lo, hi)
    assert lo < x < hi


def test_simplest_between_prefers_simple():
    assert simplest_between(F(0), F(1)) == F(1, 2)
    assert simplest_between(F(-1), F(5)) == 0
    assert simplest_between(F(1, 3), F(2, 3)) == F(1, 2)
    assert simplest_between(F(5, 2), F(7, 2)) == 3


@given(st.lists(st.tuples(frac, frac), min_size=2, max_size=8, unique=True))
def test_rational_direction_separates(pts):
    c, s = rational_direction_distinct(pts)
    assert c * c + s * s == 1
    proj = [c * x + s * y for (x, y) in pts]
    assert len(set(proj)) == len(pts)


@given(frac, frac)
def test_rotate_roundtrip(x, y):
    c, s = F(3, 5), F(4, 5)
    assert unrotate(rotate((x, y), c, s), c, s) == (x, y)
