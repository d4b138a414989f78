"""Exact measure evaluation for strip queries over a family.

Everything here is exact rational arithmetic. The pairwise Q/R loop is
quartic in n if done naively; the engine cuts it down without giving up
exactness by using two facts it verifies or that hold as kernel theorems:

* translation algebra: T(A) ∩ T(B) = T(A ∩ B) and area is translation
  invariant, so every Q_i is a vertical translate of Q_0 (checked by exact
  polygon equality at build time) and every crossing Q_i ∩ R_{i+d} equals
  the column representative Q_0 ∩ T_{d/n^2}(R_0) translated by i/n^2;
* bounding-box separation: pairs whose boxes do not meet have empty
  intersection, so they are skipped outright.

Per-pair closed forms are never assumed; every distinct area that enters a
sum comes out of the exact clipping kernel.
"""

from __future__ import annotations

import os
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .construction import Family, Parallelogram, build_family, covers_epsilon_band, family_polygons
from .geometry import (
    ConvexPolygon,
    EMPTY_POLYGON,
    area,
    clip_halfplane,
    intersect_convex,
    normalize,
    translate,
)

__all__ = [
    "Axis",
    "StripQuery",
    "DeviationResult",
    "DiagnosticBounds",
    "ConsistencyError",
    "strip_polygon",
    "area_in_strip",
    "pair_intersection_area",
    "family_deviations",
    "f_bracket",
    "pair_sum_bracket",
    "sup_deviation",
    "min_odd_n",
    "pair_area_table",
    "PairAreaRecord",
    "PairAreaTable",
    "verify_family_disjoint",
]

VERTICAL = "vertical"
HORIZONTAL = "horizontal"
Axis = str

_ZERO = Fraction(0)
_ONE = Fraction(1)
_THREE_QUARTERS = Fraction(3, 4)

WORKERS_ENV = "NIKODYM_WORKERS"


class ConsistencyError(RuntimeError):
    """An internal premise failed; results would be meaningless."""


@dataclass(frozen=True)
class StripQuery:
    """Axis-anchored rectangle: [0, extent] x [0, 1] or [0, 1] x [0, extent]."""

    axis: Axis
    extent: Fraction

    def __post_init__(self):
        if self.axis not in (VERTICAL, HORIZONTAL):
            raise ValueError(f"axis must be 'vertical' or 'horizontal', got {self.axis!r}")
        ext = self.extent
        if isinstance(ext, int):
            ext = Fraction(ext)
            object.__setattr__(self, "extent", ext)
        if not isinstance(ext, Fraction):
            raise ValueError("extent must be an exact rational")
        if not (0 <= ext <= 1):
            raise ValueError(f"extent must lie in [0, 1], got {ext}")

    @property
    def measure(self) -> Fraction:
        """Lebesgue area of the strip."""
        return self.extent


@dataclass(frozen=True)
class DeviationResult:
    """Exact union/sum/pair-sum areas and their target deviations."""

    union_area: Fraction
    sum_area: Fraction
    pair_sum: Fraction
    dev_ii: Fraction
    dev_iii: Fraction


@dataclass(frozen=True)
class DiagnosticBounds:
    """A reported (not asserted) bracket around an exact quantity."""

    lower: Fraction
    upper: Fraction
    quantity: Fraction
    within: bool


def strip_polygon(q: StripQuery) -> ConvexPolygon:
    """Rectangle polygon for the strip; empty when the extent is zero."""
    e = q.extent
    if e == 0:
        return EMPTY_POLYGON
    if q.axis == VERTICAL:
        w, h = e, _ONE
    else:
        w, h = _ONE, e
    return normalize([(_ZERO, _ZERO), (w, _ZERO), (w, h), (_ZERO, h)])


def area_in_strip(p: Parallelogram, q: StripQuery) -> Fraction:
    """Exact area of one parallelogram inside the strip."""
    return area(intersect_convex(p.polygon(), strip_polygon(q)))


def pair_intersection_area(qi: Parallelogram, rj: Parallelogram, q: StripQuery) -> Fraction:
    """Exact area of qi ∩ rj ∩ strip via two successive clips."""
    crossing = intersect_convex(qi.polygon(), rj.polygon())
    return area(intersect_convex(crossing, strip_polygon(q)))


@dataclass(frozen=True)
class _Column:
    d: int
    count: int
    poly: ConvexPolygon
    full_area: Fraction
    xlo: Fraction
    xhi: Fraction
    ylo: Fraction


class _FamilyEngine:
    """Per-family exact evaluator with translation-class tables."""

    def __init__(self, family: Family):
        self.family = family
        self.n = family.n
        self.q_polys, self.r_polys = family_polygons(family)
        self.q0 = self.q_polys[0]
        self.r0 = self.r_polys[0]
        self.member_area = area(self.q0)
        self._nsq = Fraction(self.n * self.n)
        self._verify_translation_classes()
        self._disjoint_ok = False
        self._cols = self._build_columns()
        self._rows = self._build_rows()
        self._members = self._build_member_tables()
        self._memo_x: dict = {}
        self._memo_y: dict = {}
        self._grid_cache: dict = {}

    # -- structural premises -------------------------------------------------

    def _verify_translation_classes(self) -> None:
        idx = self.family.indices
        if area(self.r0) != self.member_area:
            raise ConsistencyError("family members do not share one exact area")
        for k, i in enumerate(idx):
            shift = (i - idx[0]) / self._nsq
            if self.q_polys[k] != translate(self.q0, _ZERO, shift):
                raise ConsistencyError("rising member is not a vertical translate")
            if self.r_polys[k] != translate(self.r0, _ZERO, shift):
                raise ConsistencyError("falling member is not a vertical translate")

    def verify_disjoint(self) -> None:
        """Machine-check that each family is internally disjoint in area.

        Members of one family are exact vertical translates of each other,
        so one clip per distinct index difference covers every pair; shifts
        beyond the bounding-box reach are disjoint by box separation.
        """
        if self._disjoint_ok:
            return
        idx = sorted(self.family.indices)
        for base in (self.q0, self.r0):
            box = base.bounding_box()
            reach = box[3] - box[1]
            diffs = set()
            for a_pos, i in enumerate(idx):
                for j in idx[a_pos + 1 :]:
                    if Fraction(j - i) / self._nsq > reach:
                        break
                    diffs.add(j - i)
            for delta in sorted(diffs):
                shifted = translate(base, _ZERO, Fraction(delta) / self._nsq)
                if area(intersect_convex(base, shifted)) != 0:
                    raise ConsistencyError(
                        f"members {delta} ladder steps apart overlap with positive area (n={self.n})"
                    )
        self._disjoint_ok = True

    # -- tables ----------------------------------------------------------------

    def _build_columns(self) -> list[_Column]:
        idx = self.family.indices
        idx_set = set(idx)
        n = self.n
        cols = []
        for d in range(-(n + 1), n + 2, 2):
            count = sum(1 for i in idx if (i + d) in idx_set)
            if count == 0:
                continue
            poly = intersect_convex(self.q0, translate(self.r0, _ZERO, Fraction(d) / self._nsq))
            a = area(poly)
            if a == 0:
                continue
            box = poly.bounding_box()
            cols.append(_Column(d, count, poly, a, box[0], box[2], box[1]))
        cols.sort(key=lambda c: c.xlo)
        if cols:
            rep = cols[0]
            for c in cols[1:]:
                if c.poly != translate(rep.poly, c.xlo - rep.xlo, c.ylo - rep.ylo):
                    raise ConsistencyError("crossing columns are not congruent")
        return cols

    def _build_rows(self):
        """Sorted (base, count) rows of congruent crossings plus prefix sums."""
        if not self._cols:
            return ((), (), (0,), None, _ZERO, _ZERO)
        idx = self.family.indices
        idx_set = set(idx)
        acc: dict[Fraction, int] = {}
        for col in self._cols:
            for i in idx:
                if (i + col.d) in idx_set:
                    base = col.ylo + Fraction(i) / self._nsq
                    acc[base] = acc.get(base, 0) + 1
        bases = sorted(acc)
        counts = [acc[b] for b in bases]
        cum = [0]
        for c in counts:
            cum.append(cum[-1] + c)
        rep = self._cols[0]
        box = rep.poly.bounding_box()
        height = box[3] - box[1]
        return (bases, counts, cum, rep, height, rep.full_area)

    def _build_member_tables(self):
        """Per side: sorted member bottoms/tops and shifts from the base member."""
        tables = []
        for label, rep in (("q0", self.q0), ("r0", self.r0)):
            box = rep.bounding_box()
            ylo0, ytop0 = box[1], box[3]
            height = ytop0 - ylo0
            shifts = sorted(
                (i - self.family.indices[0]) / self._nsq for i in self.family.indices
            )
            ylos = [ylo0 + s for s in shifts]
            ytops = [y + height for y in ylos]
            tables.append((label, rep, ylos, ytops, shifts))
        return tables

    # -- memoized clips ----------------------------------------------------------

    def _area_clip_x(self, label, poly: ConvexPolygon, x0: Fraction) -> Fraction:
        key = (label, x0)
        got = self._memo_x.get(key)
        if got is None:
            got = area(clip_halfplane(poly, _ONE, _ZERO, x0))
            self._memo_x[key] = got
        return got

    def _area_clip_y(self, label, poly: ConvexPolygon, y0: Fraction) -> Fraction:
        key = (label, y0)
        got = self._memo_y.get(key)
        if got is None:
            got = area(clip_halfplane(poly, _ZERO, _ONE, y0))
            self._memo_y[key] = got
        return got

    # -- strip sums ---------------------------------------------------------------

    def sum_area(self, axis: Axis, extent: Fraction) -> Fraction:
        m = len(self.family.indices)
        if axis == VERTICAL:
            if extent == 0:
                return _ZERO
            return m * (
                self._area_clip_x("q0", self.q0, extent)
                + self._area_clip_x("r0", self.r0, extent)
            )
        total = _ZERO
        for label, rep, ylos, ytops, shifts in self._members:
            full = bisect_right(ytops, extent)
            first_empty = bisect_left(ylos, extent)
            total += full * self.member_area
            for k in range(full, first_empty):
                total += self._area_clip_y(label, rep, extent - shifts[k])
        return total

    def pair_sum(self, axis: Axis, extent: Fraction) -> Fraction:
        if extent == 0 or not self._cols:
            return _ZERO
        total = _ZERO
        if axis == VERTICAL:
            for col in self._cols:
                if col.xhi <= extent:
                    total += col.count * col.full_area
                elif col.xlo < extent:
                    total += col.count * self._area_clip_x(("col", col.d), col.poly, extent)
            return total
        bases, counts, cum, rep, height, rhomb_area = self._rows
        full = bisect_right(bases, extent - height)
        first_empty = bisect_left(bases, extent)
        total += cum[full] * rhomb_area
        for k in range(full, first_empty):
            total += counts[k] * self._area_clip_y("rhomb", rep.poly, extent - (bases[k] - rep.ylo))
        return total

    def deviations(self, axis: Axis, extent: Fraction) -> DeviationResult:
        self.verify_disjoint()
        s = self.sum_area(axis, extent)
        p = self.pair_sum(axis, extent)
        u = s - p
        lam = extent
        if not (0 <= u <= lam):
            raise ConsistencyError("union area escaped [0, area(strip)]")
        return DeviationResult(
            union_area=u,
            sum_area=s,
            pair_sum=p,
            dev_ii=abs(u - _THREE_QUARTERS * lam),
            dev_iii=abs(s - lam),
        )

    # -- grid supremum ---------------------------------------------------------------

    def grid_maxima(self, axis: Axis, step: Fraction) -> tuple[Fraction, Fraction]:
        key = (axis, step)
        got = self._grid_cache.get(key)
        if got is None:
            extents = _grid_extents(step)
            workers = _worker_count()
            if workers > 1 and len(extents) >= 256:
                got = _parallel_grid_maxima(self.family, axis, extents, workers)
            else:
                got = _chunk_maxima(self, axis, extents)
            self._grid_cache[key] = got
        return got


def _grid_extents(step: Fraction) -> list[Fraction]:
    extents = []
    e = _ZERO
    while e < 1:
        extents.append(e)
        e += step
    extents.append(_ONE)
    return extents


def _chunk_maxima(engine: _FamilyEngine, axis: Axis, extents) -> tuple[Fraction, Fraction]:
    max_ii = _ZERO
    max_iii = _ZERO
    for e in extents:
        dev = engine.deviations(axis, e)
        if dev.dev_ii > max_ii:
            max_ii = dev.dev_ii
        if dev.dev_iii > max_iii:
            max_iii = dev.dev_iii
    return (max_ii, max_iii)


def _parallel_chunk(args):
    family, axis, chunk = args
    return _chunk_maxima(_engine(family), axis, chunk)


def _parallel_grid_maxima(family: Family, axis: Axis, extents, workers: int):
    from concurrent.futures import ProcessPoolExecutor

    size = (len(extents) + workers - 1) // workers
    chunks = [extents[k : k + size] for k in range(0, len(extents), size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_parallel_chunk, [(family, axis, c) for c in chunks]))
    return (max(r[0] for r in results), max(r[1] for r in results))


def _worker_count() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


@lru_cache(maxsize=64)
def _engine(family: Family) -> _FamilyEngine:
    return _FamilyEngine(family)


def verify_family_disjoint(f: Family) -> None:
    """Raise ConsistencyError unless both families are internally disjoint."""
    _engine(f).verify_disjoint()


def family_deviations(f: Family, q: StripQuery) -> DeviationResult:
    """Exact sum, pair-sum, union and deviations for one strip query.

    union = sum - pair_sum, which is exact because within-family
    disjointness is machine-verified (and cached) before the first use.
    """
    return _engine(f).deviations(q.axis, q.extent)


def f_bracket(f: Family, y0: Fraction) -> DiagnosticBounds:
    """Horizontal member-sum versus the bracket [y0 - 1/n - 1/n^2, y0 - 2/n^2].

    The bracket is reported, not asserted: near the edges of [0, 1] it is
    known to misbehave, and the `within` flag records what happened.
    """
    if not (0 < y0 <= 1):
        raise ValueError("y0 must lie in (0, 1]")
    n = f.n
    quantity = _engine(f).sum_area(HORIZONTAL, y0)
    lower = y0 - Fraction(1, n) - Fraction(1, n * n)
    upper = y0 - Fraction(2, n * n)
    return DiagnosticBounds(lower, upper, quantity, lower <= quantity <= upper)


def pair_sum_bracket(f: Family, q: StripQuery) -> DiagnosticBounds:
    """Exact pair-sum versus the simplified quarter-scale bracket.

    Vertical brackets scale x0/4 by (1 - 3/n + 1/n^2) and
    (1 - 3/(2n) + 3/(4n^2)); horizontal brackets are y0/4 - 1/(4n) and
    y0/4 - 3/(4n) - 1/(4n^2). The horizontal pair is inverted for every n
    (a known defect of the bracket), so membership is reported only.
    """
    n = f.n
    e = q.extent
    quantity = _engine(f).pair_sum(q.axis, e)
    if q.axis == VERTICAL:
        lower = e / 4 * (1 - Fraction(3, n) + Fraction(1, n * n))
        upper = e / 4 * (1 - Fraction(3, 2 * n) + Fraction(3, 4 * n * n))
    else:
        lower = e / 4 - Fraction(1, 4 * n)
        upper = e / 4 - Fraction(3, 4 * n) - Fraction(1, 4 * n * n)
    return DiagnosticBounds(lower, upper, quantity, lower <= quantity <= upper)


def sup_deviation(f: Family, axis: Axis, which: str, grid_step: Fraction | None = None) -> Fraction:
    """Certified upper bound on the supremum of a deviation over extents.

    Maximum of the exact deviation over a grid, plus Lipschitz padding.
    Union area is 1-Lipschitz in the extent and the (ii) target is
    (3/4)-Lipschitz, so (ii) pads by (7/4) * step. The member sum is
    1-Lipschitz vertically but only (1 + 3/n)-Lipschitz horizontally (a
    height-y line meets at most (n+3)/2 members per family, each in a
    cross-section of width 1/n), so (iii) pads by 2 * step vertically and
    (2 + 3/n) * step horizontally.
    """
    if which not in ("ii", "iii"):
        raise ValueError(f"which must be 'ii' or 'iii', got {which!r}")
    if axis not in (VERTICAL, HORIZONTAL):
        raise ValueError(f"axis must be 'vertical' or 'horizontal', got {axis!r}")
    n = f.n
    step = grid_step if grid_step is not None else Fraction(1, 4 * n * n)
    if not (0 < step <= 1):
        raise ValueError("grid_step must lie in (0, 1]")
    max_ii, max_iii = _engine(f).grid_maxima(axis, step)
    if which == "ii":
        return max_ii + Fraction(7, 4) * step
    if axis == VERTICAL:
        return max_iii + 2 * step
    return max_iii + (2 + Fraction(3, n)) * step


def min_odd_n(epsilon: Fraction, n_cap: int, grid_step: Fraction | None = None) -> int | None:
    """Smallest odd n <= n_cap passing coverage and all four sup bounds.

    Returns None when the cap is exhausted.
    """
    if not (0 < epsilon < Fraction(1, 2)):
        raise ValueError("epsilon must satisfy 0 < epsilon < 1/2")
    if n_cap < 3:
        raise ValueError("n_cap must be at least 3")
    for n in range(3, n_cap + 1, 2):
        f = build_family(n)
        if not covers_epsilon_band(f, epsilon):
            continue
        if all(
            sup_deviation(f, axis, which, grid_step) < epsilon
            for axis in (VERTICAL, HORIZONTAL)
            for which in ("ii", "iii")
        ):
            return n
    return None


@dataclass(frozen=True)
class PairAreaRecord:
    i: int
    j: int
    area: Fraction
    crossing_x: Fraction
    matches_closed_form: bool


@dataclass(frozen=True)
class PairAreaTable:
    """Per-pair diagnostic for the 1/(2n^3) crossing-area form.

    Candidates are the pairs whose bounding boxes meet or touch
    (|i - j| <= n + 1); each is clipped exactly, one honest pair at a
    time. All remaining pairs are separated boxes with exact area 0, and
    their crossing abscissa (j + n - i)/(2n) falls outside (0, 1); that is
    checked arithmetically for every difference class.
    """

    n: int
    closed_form: Fraction
    records: tuple[PairAreaRecord, ...]
    n_total_pairs: int
    n_candidates: int
    n_matching: int
    n_deviating: int
    deviating_all_boundary: bool
    noncandidates_all_boundary: bool


def pair_area_table(f: Family) -> PairAreaTable:
    n = f.n
    closed = Fraction(1, 2 * n ** 3)
    idx = f.indices
    idx_set = set(idx)
    q_polys, r_polys = family_polygons(f)
    pos = {i: k for k, i in enumerate(idx)}
    records = []
    deviating_boundary = True
    for i in idx:
        for d in range(-(n + 1), n + 2, 2):
            j = i + d
            if j not in idx_set:
                continue
            a = area(intersect_convex(q_polys[pos[i]], r_polys[pos[j]]))
            x_star = Fraction(j + n - i, 2 * n)
            match = a == closed
            if not match and (0 < x_star < 1):
                deviating_boundary = False
            records.append(PairAreaRecord(i, j, a, x_star, match))
    noncand_ok = True
    for d in range(-(len(idx) - 1) * 2, (len(idx) - 1) * 2 + 1, 2):
        if abs(d) <= n + 1:
            continue
        x_star = Fraction(d + n, 2 * n)
        if 0 < x_star < 1:
            noncand_ok = False
    n_match = sum(1 for r in records if r.matches_closed_form)
    return PairAreaTable(
        n=n,
        closed_form=closed,
        records=tuple(records),
        n_total_pairs=len(idx) ** 2,
        n_candidates=len(records),
        n_matching=n_match,
        n_deviating=len(records) - n_match,
        deviating_all_boundary=deviating_boundary,
        noncandidates_all_boundary=noncand_ok,
    )
