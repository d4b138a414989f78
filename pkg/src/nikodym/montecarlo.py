"""Independent Monte Carlo estimation of union areas.

This module never touches the inclusion-exclusion path: membership is
decided by point-in-polygon tests alone, so its estimates are a genuinely
independent cross-check of the exact engine.

Randomness comes from the published Philox 4x64 counter-based generator
(key = seed). Sample k consumes raw outputs 2k and 2k+1; coordinates are
53-bit dyadic rationals (top 53 bits of each output over 2^53), which
keeps every membership decision exactly decidable. The counter supports
jumping, so disjoint sample ranges can be generated independently and
bit-identically (see raw_dyadic_pairs).

The bulk path evaluates edge tests in float64 and accepts a sign only
when the value clears a margin of 1e-9; the absolute float error for
these magnitudes is below 1e-13, and anything inside the margin is
re-decided with exact rational arithmetic. Decisions are therefore exact
on every platform, and identical (seed, samples) give bit-identical
estimates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from numpy.random import Philox

from .construction import Family, family_polygons
from .geometry import Point, point_in_convex
from .measure import HORIZONTAL, StripQuery, VERTICAL

__all__ = ["MCEstimate", "point_in_family_union", "mc_union_area", "raw_dyadic_pairs"]

_MARGIN = 1e-9
_TWO53 = 1 << 53


@dataclass(frozen=True)
class MCEstimate:
    estimate: float
    std_error: float
    samples: int
    seed: int


def point_in_family_union(f: Family, pt) -> bool:
    """Closed membership of a point in the union of all family members."""
    x, y = pt
    p = Point(Fraction(x), Fraction(y))
    q_polys, r_polys = family_polygons(f)
    return any(point_in_convex(poly, p) for poly in q_polys) or any(
        point_in_convex(poly, p) for poly in r_polys
    )


def raw_dyadic_pairs(seed: int, start: int, count: int):
    """53-bit dyadic numerator pairs for samples [start, start + count).

    `start` must be even: two samples fill one Philox block, and jumping
    is done on block boundaries so partitioned generation reproduces the
    single-stream output exactly.
    """
    if start % 2:
        raise ValueError("start must be even (one Philox block is two samples)")
    bg = Philox(key=seed)
    if start:
        bg.advance(start // 2)
    raw = bg.random_raw(2 * count)
    shift = np.uint64(11)
    return raw[0::2] >> shift, raw[1::2] >> shift


@lru_cache(maxsize=32)
def _edge_tables(f: Family):
    """Float edge constants (a*x + b*y + c >= 0 inside) per side, plus
    the exact polygons for fallback decisions."""
    n = f.n
    idx = f.indices
    if list(idx) != [2 * k for k in range(len(idx))]:
        raise ValueError("family index layout is not the expected even ladder")
    sides = []
    for polys in family_polygons(f):
        m = len(polys)
        a = np.empty((m, 4))
        b = np.empty((m, 4))
        c = np.empty((m, 4))
        for k, poly in enumerate(polys):
            vs = poly.vertices
            if len(vs) != 4:
                raise ValueError("member polygons must be quadrilaterals")
            for e in range(4):
                p0, p1 = vs[e], vs[(e + 1) % 4]
                a[k, e] = float(-(p1.y - p0.y))
                b[k, e] = float(p1.x - p0.x)
                c[k, e] = float((p1.y - p0.y) * p0.x - (p1.x - p0.x) * p0.y)
        sides.append((a, b, c, polys))
    return n, sides


def _prefilter_base(side: int, n: int, pxf, pyf):
    # Candidate ladder positions; the window is generous enough that the
    # true containing member can never fall outside it.
    if side == 0:
        t = (n * n) * (pyf - pxf / n)
    else:
        t = (n * n) * pyf + n * pxf - n
    k = np.floor(t).astype(np.int64)
    return k - (k & 1)


def mc_union_area(f: Family, q: StripQuery, samples: int, seed: int) -> MCEstimate:
    """Hit-or-miss estimate of the union area inside the strip."""
    if samples < 1:
        raise ValueError("samples must be at least 1")
    if not (0 <= seed < 2 ** 64):
        raise ValueError("seed must fit in 64 bits")
    lam = q.measure
    if lam == 0:
        return MCEstimate(0.0, 0.0, samples, seed)

    kx, ky = raw_dyadic_pairs(seed, 0, samples)
    xs = kx.astype(np.float64) * 2.0 ** -53
    ys = ky.astype(np.float64) * 2.0 ** -53
    if q.axis == VERTICAL:
        ex, ey = q.extent, Fraction(1)
    else:
        ex, ey = Fraction(1), q.extent
    pxf = xs * float(ex) if ex != 1 else xs
    pyf = ys * float(ey) if ey != 1 else ys

    n, sides = _edge_tables(f)
    max_idx = 2 * (len(sides[0][3]) - 1)
    hits = np.zeros(samples, dtype=bool)
    pending: list[tuple[int, int, int]] = []
    for side, (a, b, c, _polys) in enumerate(sides):
        base = _prefilter_base(side, n, pxf, pyf)
        for off in (-2, 0, 2):
            cand = base + off
            valid = (cand >= 0) & (cand <= max_idx)
            if not valid.any():
                continue
            k = np.clip(cand >> 1, 0, len(_polys) - 1)
            vals = a[k] * pxf[:, None] + b[k] * pyf[:, None] + c[k]
            minv = vals.min(axis=1)
            hits |= valid & (minv >= _MARGIN)
            unsure = valid & (minv > -_MARGIN) & (minv < _MARGIN)
            if unsure.any():
                for pt_idx in np.nonzero(unsure)[0]:
                    pending.append((int(pt_idx), side, int(cand[pt_idx]) >> 1))

    for pt_idx, side, k in pending:
        if hits[pt_idx]:
            continue
        px = ex * Fraction(int(kx[pt_idx]), _TWO53)
        py = ey * Fraction(int(ky[pt_idx]), _TWO53)
        if point_in_convex(sides[side][3][k], Point(px, py)):
            hits[pt_idx] = True

    nhits = int(hits.sum())
    phat = nhits / samples
    lamf = float(lam)
    estimate = lamf * phat
    std_error = lamf * math.sqrt(phat * (1.0 - phat) / samples)
    return MCEstimate(estimate, std_error, samples, seed)
