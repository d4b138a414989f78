"""Shared helpers for the test suite: independent oracles and generators."""

from __future__ import annotations

import random
from fractions import Fraction

from nikodym.geometry import ConvexPolygon, area, clip_halfplane, intersect_convex, normalize
from nikodym.measure import StripQuery, area_in_strip, pair_intersection_area


def rect(x0, y0, x1, y1) -> ConvexPolygon:
    return normalize([(x0, y0), (x1, y0), (x1, y1), (x0, y1)])


def rect_overlap_area(a, b) -> Fraction:
    """Closed-form overlap of two axis-aligned rectangles, the oracle for
    the randomized intersection property."""
    (ax0, ay0, ax1, ay1), (bx0, by0, bx1, by1) = a, b
    w = min(ax1, bx1) - max(ax0, bx0)
    h = min(ay1, by1) - max(ay0, by0)
    if w <= 0 or h <= 0:
        return Fraction(0)
    return w * h


def random_fraction(rng: random.Random, lo=0, hi=1, den_max=24) -> Fraction:
    den = rng.randint(1, den_max)
    num = rng.randint(lo * den, hi * den)
    return Fraction(num, den)


def random_convex_polygon(rng: random.Random) -> ConvexPolygon:
    """Random nonempty convex polygon: a rational rectangle cut by a few
    random halfplanes, retried until some area survives."""
    while True:
        x0, x1 = sorted(random_fraction(rng, 0, 4, 12) for _ in range(2))
        y0, y1 = sorted(random_fraction(rng, 0, 4, 12) for _ in range(2))
        if x0 == x1 or y0 == y1:
            continue
        poly = rect(x0, y0, x1, y1)
        for _ in range(rng.randint(0, 3)):
            a = Fraction(rng.randint(-3, 3))
            b = Fraction(rng.randint(-3, 3))
            if a == 0 and b == 0:
                continue
            cx = (x0 + x1) / 2 + Fraction(rng.randint(-2, 2), 8)
            cy = (y0 + y1) / 2 + Fraction(rng.randint(-2, 2), 8)
            poly = clip_halfplane(poly, a, b, a * cx + b * cy)
        if not poly.is_empty:
            return poly


def brute_pair_sum(family, query: StripQuery) -> Fraction:
    """Reference pair sum: every (i, j) pair clipped independently."""
    return sum(
        pair_intersection_area(qi, rj, query)
        for qi in family.q_list
        for rj in family.r_list
    )


def brute_sum_area(family, query: StripQuery) -> Fraction:
    return sum(area_in_strip(p, query) for p in family.q_list + family.r_list)


def brute_union_area_small(family, query: StripQuery) -> Fraction:
    """Union area by inclusion-exclusion over ALL subsets is infeasible;
    instead use sum - pairwise with full triple-wise verification that no
    three members share area (any Q-Q or R-R overlap would break it).
    Only valid because within-family disjointness holds; asserted here
    independently for the small families this is used on."""
    from nikodym.construction import family_polygons
    from nikodym.geometry import area as poly_area

    q_polys, r_polys = family_polygons(family)
    for polys in (q_polys, r_polys):
        for a_idx in range(len(polys)):
            for b_idx in range(a_idx + 1, len(polys)):
                assert poly_area(intersect_convex(polys[a_idx], polys[b_idx])) == 0
    return brute_sum_area(family, query) - brute_pair_sum(family, query)
