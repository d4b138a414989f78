"""Slanted parallelogram families over the unit square.

For odd n >= 3 and the even index set S(n) = {0, 2, ..., n^2-n-2}, the
Q-family rises with slope 1/n (left base at i/n^2, right base at
(i+n)/n^2) and the R-family falls with slope -1/n (bases swapped), every
member with vertical thickness 1/n^2. The left side of a member is its
trace on the x = 0 edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .geometry import ConvexPolygon, EMPTY_POLYGON, normalize
from .rational import format_rational, parse_rational

__all__ = [
    "Parallelogram",
    "LeftInterval",
    "Family",
    "index_set",
    "build_family",
    "left_side",
    "left_cover_interval",
    "covers_epsilon_band",
    "affine_contract",
    "family_polygons",
    "family_to_dict",
    "family_from_dict",
]

_ONE = Fraction(1)
_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Parallelogram:
    """Convex hull of (0,b1), (0,b1+delta), (1,b2), (1,b2+delta)."""

    b1: Fraction
    b2: Fraction
    delta: Fraction

    def __post_init__(self):
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        for b in (self.b1, self.b2):
            if not (0 <= b <= 1 - self.delta):
                raise ValueError("base heights must satisfy 0 <= b <= 1 - delta")

    def polygon(self) -> ConvexPolygon:
        b1, b2, d = self.b1, self.b2, self.delta
        return normalize(
            [(Fraction(0), b1), (_ONE, b2), (_ONE, b2 + d), (Fraction(0), b1 + d)]
        )


@dataclass(frozen=True)
class LeftInterval:
    """The segment {0} x [b, b+delta] on the left edge of the square."""

    b: Fraction
    delta: Fraction

    def __post_init__(self):
        if self.delta <= 0 or not (0 <= self.b <= 1 - self.delta):
            raise ValueError("left interval must sit inside the unit edge")

    @property
    def lo(self) -> Fraction:
        return self.b

    @property
    def hi(self) -> Fraction:
        return self.b + self.delta


@dataclass(frozen=True)
class Family:
    """A full Q/R family for one odd n; immutable and shareable."""

    n: int
    indices: tuple[int, ...]
    q_list: tuple[Parallelogram, ...]
    r_list: tuple[Parallelogram, ...]

    @property
    def size(self) -> int:
        """Total number of parallelograms (n^2 - n)."""
        return len(self.q_list) + len(self.r_list)


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 3 or n % 2 == 0:
        raise ValueError(f"n must be an odd integer >= 3, got {n!r}")


def index_set(n: int) -> tuple[int, ...]:
    """The even integers 0, 2, ..., n^2 - n - 2."""
    _check_n(n)
    return tuple(range(0, n * n - n - 1, 2))


def build_family(n: int, n_cap: int = 101) -> Family:
    """Construct the Q/R family for odd n.

    The cap bounds the quartic pairwise work downstream; raise it
    explicitly for larger experiments.
    """
    _check_n(n)
    if n > n_cap:
        raise ValueError(f"n={n} exceeds the configured cap {n_cap}")
    nsq = Fraction(n * n)
    delta = 1 / nsq
    idx = index_set(n)
    q = tuple(Parallelogram(i / nsq, (i + n) / nsq, delta) for i in idx)
    r = tuple(Parallelogram((j + n) / nsq, j / nsq, delta) for j in idx)
    return Family(n=n, indices=idx, q_list=q, r_list=r)


def left_side(p: Parallelogram) -> LeftInterval:
    return LeftInterval(p.b1, p.delta)


def left_cover_interval(f: Family) -> tuple[Fraction, Fraction]:
    """Endpoints of the maximal interval around 1/2 covered by left sides.

    Computed by an exact interval-union sweep over all left sides; closed
    intervals that touch are merged. Coverage gaps away from the central
    band are ignored: the returned component is the one containing 1/2.
    """
    spans = sorted(
        (left_side(p).lo, left_side(p).hi) for p in f.q_list + f.r_list
    )
    lo, hi = spans[0]
    for a, b in spans[1:]:
        if a <= hi:
            if b > hi:
                hi = b
        else:
            if lo <= _HALF <= hi:
                return (lo, hi)
            lo, hi = a, b
    if lo <= _HALF <= hi:
        return (lo, hi)
    raise ValueError("left sides do not cover the midpoint of the edge")


def covers_epsilon_band(f: Family, epsilon: Fraction) -> bool:
    """True iff the swept cover interval contains [epsilon, 1 - epsilon]."""
    if not (0 < epsilon < _HALF):
        raise ValueError("epsilon must satisfy 0 < epsilon < 1/2")
    lo, hi = left_cover_interval(f)
    return lo <= epsilon and hi >= 1 - epsilon


def affine_contract(p: ConvexPolygon, b: Fraction, i: int) -> ConvexPolygon:
    """Vertical contraction (x, y) -> (x, b + (y - b)/i) about height b.

    Scales area by exactly 1/i; i must be a positive integer.
    """
    if not isinstance(i, int) or i < 1:
        raise ValueError(f"contraction factor must be a positive integer, got {i!r}")
    if p.is_empty:
        return EMPTY_POLYGON
    if i == 1:
        return p
    return normalize((v.x, b + Fraction(v.y - b, i)) for v in p.vertices)


@lru_cache(maxsize=64)
def family_polygons(f: Family) -> tuple[tuple[ConvexPolygon, ...], tuple[ConvexPolygon, ...]]:
    """Polygon realizations of (q_list, r_list), cached per family."""
    return (
        tuple(p.polygon() for p in f.q_list),
        tuple(p.polygon() for p in f.r_list),
    )


def _para_dict(p: Parallelogram) -> dict:
    return {
        "b1": format_rational(p.b1),
        "b2": format_rational(p.b2),
        "delta": format_rational(p.delta),
    }


def family_to_dict(f: Family) -> dict:
    return {
        "n": f.n,
        "indices": list(f.indices),
        "q": [_para_dict(p) for p in f.q_list],
        "r": [_para_dict(p) for p in f.r_list],
    }


def family_from_dict(doc: dict) -> Family:
    def para(d: dict) -> Parallelogram:
        return Parallelogram(
            parse_rational(d["b1"]), parse_rational(d["b2"]), parse_rational(d["delta"])
        )

    return Family(
        n=int(doc["n"]),
        indices=tuple(int(i) for i in doc["indices"]),
        q_list=tuple(para(d) for d in doc["q"]),
        r_list=tuple(para(d) for d in doc["r"]),
    )
