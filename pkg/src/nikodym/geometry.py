"""Exact rational 2D convex geometry.

Coordinates are ``Fraction``s. A polygon is stored normalized: vertices in
strictly counterclockwise order, no duplicate and no collinear vertices,
rotated so the lexicographically smallest vertex comes first. The empty
region is the polygon with no vertices; anything with zero area normalizes
to it. All operations are pure functions and never round.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "Point",
    "ConvexPolygon",
    "EMPTY_POLYGON",
    "normalize",
    "area",
    "clip_halfplane",
    "intersect_convex",
    "point_in_convex",
    "translate",
    "polygon_to_lists",
    "polygon_from_lists",
]

_ZERO = Fraction(0)


class Point(NamedTuple):
    x: Fraction
    y: Fraction


class ConvexPolygon:
    """Immutable convex polygon in normalized CCW form, or empty.

    Construct through :func:`normalize` unless the vertex tuple is already
    known to be normalized (internal callers only).
    """

    __slots__ = ("vertices",)

    def __init__(self, vertices: tuple[Point, ...] = ()):
        self.vertices = vertices

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def bounding_box(self) -> tuple[Fraction, Fraction, Fraction, Fraction] | None:
        """(xmin, ymin, xmax, ymax), or None for the empty region."""
        if not self.vertices:
            return None
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return (min(xs), min(ys), max(xs), max(ys))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConvexPolygon):
            return NotImplemented
        return self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        pts = ", ".join(f"({v.x},{v.y})" for v in self.vertices)
        return f"ConvexPolygon([{pts}])"


EMPTY_POLYGON = ConvexPolygon(())


def _as_point(p) -> Point:
    x, y = p
    if isinstance(x, float) or isinstance(y, float):
        raise TypeError("polygon coordinates must be exact (Fraction or int)")
    return Point(Fraction(x), Fraction(y))


def _cross(a: Point, b: Point, c: Point) -> Fraction:
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def _clean(pts: list[Point]) -> tuple[Point, ...]:
    """Normalize a CCW convex chain: dedupe, drop collinear vertices, map
    zero-area chains to the empty tuple, rotate to canonical start.

    Raises ValueError on a strictly negative cross product (non-convex or
    clockwise input).
    """
    if not pts:
        return ()
    dedup = [pts[0]]
    for p in pts[1:]:
        if p != dedup[-1]:
            dedup.append(p)
    while len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    if len(dedup) < 3:
        return ()
    changed = True
    while changed and len(dedup) >= 3:
        changed = False
        kept = []
        k = len(dedup)
        for i in range(k):
            cr = _cross(dedup[i - 1], dedup[i], dedup[(i + 1) % k])
            if cr < 0:
                raise ValueError("vertices do not form a counterclockwise convex chain")
            if cr == 0:
                changed = True
            else:
                kept.append(dedup[i])
        dedup = kept
    if len(dedup) < 3:
        return ()
    m = min(range(len(dedup)), key=lambda i: dedup[i])
    return tuple(dedup[m:] + dedup[:m])


def normalize(points: Iterable) -> ConvexPolygon:
    """Build a normalized polygon from a CCW convex chain of points.

    Duplicates and collinear vertices are removed; zero-area chains become
    the empty polygon. A strictly negative cross product after cleanup is
    rejected with ValueError.
    """
    return ConvexPolygon(_clean([_as_point(p) for p in points]))


def area(p: ConvexPolygon) -> Fraction:
    """Exact shoelace area; 0 for the empty polygon."""
    vs = p.vertices
    n = len(vs)
    if n < 3:
        return _ZERO
    s = _ZERO
    for i in range(n):
        a = vs[i]
        b = vs[(i + 1) % n]
        s += a.x * b.y - b.x * a.y
    return s / 2


def clip_halfplane(p: ConvexPolygon, a: Fraction, b: Fraction, c: Fraction) -> ConvexPolygon:
    """Exact intersection of `p` with the halfplane a*x + b*y <= c."""
    if not (a or b):
        raise ValueError("degenerate halfplane: a and b are both zero")
    vs = p.vertices
    if not vs:
        return EMPTY_POLYGON
    sides = [a * v.x + b * v.y - c for v in vs]
    if all(s <= 0 for s in sides):
        return p
    out: list[Point] = []
    k = len(vs)
    for i in range(k):
        j = (i + 1) % k
        s0, s1 = sides[i], sides[j]
        v0, v1 = vs[i], vs[j]
        if s0 <= 0:
            out.append(v0)
            if s1 > 0:
                t = s0 / (s0 - s1)
                out.append(Point(v0.x + (v1.x - v0.x) * t, v0.y + (v1.y - v0.y) * t))
        elif s1 < 0:
            t = s0 / (s0 - s1)
            out.append(Point(v0.x + (v1.x - v0.x) * t, v0.y + (v1.y - v0.y) * t))
    return ConvexPolygon(_clean(out))


def intersect_convex(p: ConvexPolygon, q: ConvexPolygon) -> ConvexPolygon:
    """Exact p ∩ q by clipping p against each edge halfplane of q."""
    if p.is_empty or q.is_empty:
        return EMPTY_POLYGON
    out = p
    vs = q.vertices
    k = len(vs)
    for i in range(k):
        a = vs[i]
        b = vs[(i + 1) % k]
        ha = b.y - a.y
        hb = a.x - b.x
        out = clip_halfplane(out, ha, hb, ha * a.x + hb * a.y)
        if out.is_empty:
            break
    return out


def point_in_convex(p: ConvexPolygon, pt: Point) -> bool:
    """Closed membership test: True iff pt is inside or on the boundary."""
    vs = p.vertices
    k = len(vs)
    if k < 3:
        return False
    for i in range(k):
        if _cross(vs[i], vs[(i + 1) % k], pt) < 0:
            return False
    return True


def translate(p: ConvexPolygon, dx: Fraction, dy: Fraction) -> ConvexPolygon:
    """Translate by (dx, dy); normalization and canonical rotation survive."""
    if p.is_empty:
        return EMPTY_POLYGON
    return ConvexPolygon(tuple(Point(v.x + dx, v.y + dy) for v in p.vertices))


def polygon_to_lists(p: ConvexPolygon) -> list[list[str]]:
    """Wire format: array of [x, y] points with "p/q" rational strings."""
    from .rational import format_rational

    return [[format_rational(v.x), format_rational(v.y)] for v in p.vertices]


def polygon_from_lists(data: Sequence[Sequence[str]]) -> ConvexPolygon:
    from .rational import parse_rational

    return normalize((parse_rational(x), parse_rational(y)) for x, y in data)
