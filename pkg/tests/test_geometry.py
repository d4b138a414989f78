"""Kernel tests: exact areas, clipping, intersection, and the translation
theorems the measure engine's table reductions rely on."""

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nikodym.geometry import (
    EMPTY_POLYGON,
    Point,
    area,
    clip_halfplane,
    intersect_convex,
    normalize,
    point_in_convex,
    polygon_from_lists,
    polygon_to_lists,
    translate,
)

from util import random_convex_polygon, rect, rect_overlap_area

UNIT_SQUARE = rect(0, 0, 1, 1)


class TestArea:
    def test_unit_square(self):
        assert area(UNIT_SQUARE) == 1

    def test_empty(self):
        assert area(EMPTY_POLYGON) == 0

    def test_slanted_parallelogram(self):
        # shoelace by hand on (0,0), (1,1/3), (1,4/9), (0,1/9): 1/9
        poly = normalize([(0, 0), (1, F(1, 3)), (1, F(4, 9)), (0, F(1, 9))])
        assert area(poly) == F(1, 9)


class TestClipHalfplane:
    def test_axis_cut(self):
        out = clip_halfplane(UNIT_SQUARE, F(1), F(0), F(1, 2))
        assert area(out) == F(1, 2)
        assert out == rect(0, 0, F(1, 2), 1)

    def test_noncutting(self):
        assert clip_halfplane(UNIT_SQUARE, F(1), F(0), F(2)) == UNIT_SQUARE

    def test_diagonal_cut(self):
        out = clip_halfplane(UNIT_SQUARE, F(1), F(1), F(1))
        assert area(out) == F(1, 2)
        assert set(out.vertices) == {Point(F(0), F(0)), Point(F(1), F(0)), Point(F(0), F(1))}

    def test_fully_outside(self):
        assert clip_halfplane(UNIT_SQUARE, F(1), F(0), F(-1)).is_empty

    def test_tangent_cut_is_empty(self):
        assert clip_halfplane(UNIT_SQUARE, F(-1), F(0), F(0)) == UNIT_SQUARE
        assert clip_halfplane(UNIT_SQUARE, F(1), F(0), F(0)).is_empty

    def test_degenerate_halfplane_rejected(self):
        with pytest.raises(ValueError):
            clip_halfplane(UNIT_SQUARE, F(0), F(0), F(1))


class TestNormalize:
    def test_duplicate_removal(self):
        poly = normalize([(0, 0), (1, 0), (1, 0), (1, 1), (0, 1)])
        assert len(poly.vertices) == 4
        assert poly == UNIT_SQUARE

    def test_collinear_chain_is_empty(self):
        assert normalize([(0, 0), (F(1, 2), 0), (1, 0)]).is_empty

    def test_nonconvex_rejected(self):
        with pytest.raises(ValueError):
            normalize([(0, 0), (1, 0), (1, 1), (F(1, 2), F(1, 4))])

    def test_point_on_hull_edge_is_dropped(self):
        # (1/2, 1/2) lies on the edge from (1,1) to (0,0): a degenerate but
        # valid counterclockwise chain, normalized to the triangle.
        poly = normalize([(0, 0), (1, 0), (1, 1), (F(1, 2), F(1, 2))])
        assert len(poly.vertices) == 3
        assert area(poly) == F(1, 2)

    def test_clockwise_rejected(self):
        with pytest.raises(ValueError):
            normalize([(0, 0), (0, 1), (1, 1), (1, 0)])

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            normalize([(0.0, 0), (1, 0), (1, 1)])


class TestIntersect:
    def test_idempotent(self):
        assert intersect_convex(UNIT_SQUARE, UNIT_SQUARE) == UNIT_SQUARE

    def test_disjoint(self):
        other = rect(2, 0, 3, 1)
        assert intersect_convex(UNIT_SQUARE, other).is_empty

    def test_strip_crossing_area(self):
        # crossing of slope +-1/3 strips of thickness 1/9: rhombus with
        # diagonals 1/3 and 1/9, area 1/54
        q = normalize([(0, 0), (1, F(1, 3)), (1, F(4, 9)), (0, F(1, 9))])
        r = normalize([(0, F(1, 3)), (1, 0), (1, F(1, 9)), (0, F(4, 9))])
        got = intersect_convex(q, r)
        assert area(got) == F(1, 54)
        box = got.bounding_box()
        assert (box[0], box[2]) == (F(1, 3), F(2, 3))


class TestPointInConvex:
    def test_interior_boundary_exterior(self):
        assert point_in_convex(UNIT_SQUARE, Point(F(1, 2), F(1, 2)))
        assert point_in_convex(UNIT_SQUARE, Point(F(0), F(0)))
        assert not point_in_convex(UNIT_SQUARE, Point(F(2), F(0)))
        assert not point_in_convex(EMPTY_POLYGON, Point(F(0), F(0)))


class TestSerialization:
    def test_round_trip(self):
        poly = normalize([(0, 0), (1, F(1, 3)), (1, F(4, 9)), (0, F(1, 9))])
        assert polygon_from_lists(polygon_to_lists(poly)) == poly


fractions_01 = st.fractions(min_value=0, max_value=1, max_denominator=16)
fractions_sym = st.fractions(min_value=-2, max_value=2, max_denominator=8)


@st.composite
def rectangles(draw):
    x0, x1 = sorted((draw(fractions_01), draw(fractions_01)))
    y0, y1 = sorted((draw(fractions_01), draw(fractions_01)))
    return (x0, y0, x1, y1)


class TestProperties:
    @given(rectangles(), rectangles())
    def test_rectangle_overlap_closed_form(self, ra, rb):
        pa = rect(*ra) if ra[0] != ra[2] and ra[1] != ra[3] else EMPTY_POLYGON
        pb = rect(*rb) if rb[0] != rb[2] and rb[1] != rb[3] else EMPTY_POLYGON
        expected = rect_overlap_area(ra, rb) if not (pa.is_empty or pb.is_empty) else F(0)
        assert area(intersect_convex(pa, pb)) == expected

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10 ** 6))
    def test_intersection_commutative_in_area(self, seed):
        rng = random.Random(seed)
        p = random_convex_polygon(rng)
        q = random_convex_polygon(rng)
        assert area(intersect_convex(p, q)) == area(intersect_convex(q, p))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10 ** 6), fractions_sym, fractions_sym, fractions_sym)
    def test_clip_never_grows_area(self, seed, a, b, c):
        if a == 0 and b == 0:
            return
        p = random_convex_polygon(random.Random(seed))
        clipped = clip_halfplane(p, a, b, c)
        assert area(clipped) <= area(p)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10 ** 6))
    def test_intersection_bounded_by_min(self, seed):
        rng = random.Random(seed)
        p = random_convex_polygon(rng)
        q = random_convex_polygon(rng)
        got = area(intersect_convex(p, q))
        assert got <= min(area(p), area(q))

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10 ** 6), fractions_sym)
    def test_extra_clip_is_monotone(self, seed, c):
        rng = random.Random(seed)
        p = random_convex_polygon(rng)
        q = random_convex_polygon(rng)
        q2 = clip_halfplane(q, F(1), F(1), c)
        assert area(intersect_convex(p, q2)) <= area(intersect_convex(p, q))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10 ** 6), fractions_sym, fractions_sym)
    def test_translation_commutes_with_intersection(self, seed, dx, dy):
        # T(A) ∩ T(B) == T(A ∩ B): the identity behind the engine's
        # column representatives.
        rng = random.Random(seed)
        p = random_convex_polygon(rng)
        q = random_convex_polygon(rng)
        lhs = intersect_convex(translate(p, dx, dy), translate(q, dx, dy))
        assert lhs == translate(intersect_convex(p, q), dx, dy)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10 ** 6), fractions_sym, fractions_sym)
    def test_axis_clip_of_translate(self, seed, dy, c):
        # area(T_(0,dy) P ∩ {y <= c}) == area(P ∩ {y <= c - dy}), and the
        # x-clip area is invariant under vertical translation.
        p = random_convex_polygon(random.Random(seed))
        shifted = translate(p, F(0), dy)
        assert area(clip_halfplane(shifted, F(0), F(1), c)) == area(
            clip_halfplane(p, F(0), F(1), c - dy)
        )
        assert area(clip_halfplane(shifted, F(1), F(0), c)) == area(
            clip_halfplane(p, F(1), F(0), c)
        )

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 10 ** 6), fractions_sym, fractions_sym, fractions_sym)
    def test_clip_output_is_normalized(self, seed, a, b, c):
        if a == 0 and b == 0:
            return
        p = random_convex_polygon(random.Random(seed))
        out = clip_halfplane(p, a, b, c)
        if not out.is_empty:
            renorm = normalize(out.vertices)
            assert renorm == out
            assert area(out) > 0
