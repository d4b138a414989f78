"""Exact-arithmetic verification kit for slanted parallelogram families.

Constructs the Q/R parallelogram families over the unit square for odd n,
certifies left-edge coverage and the union/sum measure deviations by exact
rational computation, and cross-checks unions with an independent Monte
Carlo oracle. See the README for the command-line interface.
"""

from .construction import (
    Family,
    LeftInterval,
    Parallelogram,
    affine_contract,
    build_family,
    covers_epsilon_band,
    family_from_dict,
    family_polygons,
    family_to_dict,
    index_set,
    left_cover_interval,
    left_side,
)
from .geometry import (
    ConvexPolygon,
    EMPTY_POLYGON,
    Point,
    area,
    clip_halfplane,
    intersect_convex,
    normalize,
    point_in_convex,
    translate,
)
from .measure import (
    ConsistencyError,
    DeviationResult,
    DiagnosticBounds,
    StripQuery,
    area_in_strip,
    f_bracket,
    family_deviations,
    min_odd_n,
    pair_area_table,
    pair_intersection_area,
    pair_sum_bracket,
    strip_polygon,
    sup_deviation,
    verify_family_disjoint,
)
from .montecarlo import MCEstimate, mc_union_area, point_in_family_union
from .rational import decimal_str, format_rational, parse_rational
from .report import VerificationReport, run_verification

__version__ = "0.1.0"
