"""Verification reports and their JSON/CSV serialization.

Exact rationals serialize as "p/q" strings plus 20-significant-digit
decimal annotations for human reading; the decimals are never inputs to
further computation. Serialization is deterministic, so identical inputs
give byte-identical documents.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .construction import build_family, covers_epsilon_band
from .measure import (
    HORIZONTAL,
    VERTICAL,
    DiagnosticBounds,
    StripQuery,
    f_bracket,
    family_deviations,
    pair_sum_bracket,
    sup_deviation,
)
from .rational import decimal_str, format_rational

__all__ = ["VerificationReport", "MCCrossCheck", "run_verification", "report_to_dict", "rational_doc"]

_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class MCCrossCheck:
    estimate: float
    std_error: float
    samples: int
    seed: int
    exact_union: Fraction
    within_4se: bool


@dataclass(frozen=True)
class VerificationReport:
    n: int
    epsilon: Fraction
    property_i: bool
    sup_dev_ii_vertical: Fraction
    sup_dev_ii_horizontal: Fraction
    sup_dev_iii_vertical: Fraction
    sup_dev_iii_horizontal: Fraction
    diagnostics: tuple[tuple[str, DiagnosticBounds], ...]
    mc_crosscheck: MCCrossCheck | None
    passed: bool


def run_verification(
    n: int,
    epsilon: Fraction,
    grid_step: Fraction | None = None,
    mc_samples: int = 0,
    seed: int = 0,
) -> VerificationReport:
    """Full certification run for one family at tolerance epsilon."""
    if not (0 < epsilon < _HALF):
        raise ValueError("epsilon must satisfy 0 < epsilon < 1/2")
    family = build_family(n)
    prop_i = covers_epsilon_band(family, epsilon)
    sups = {
        (axis, which): sup_deviation(family, axis, which, grid_step)
        for axis in (VERTICAL, HORIZONTAL)
        for which in ("ii", "iii")
    }
    diagnostics = (
        ("pair_sum_bracket_vertical_full_strip", pair_sum_bracket(family, StripQuery(VERTICAL, Fraction(1)))),
        ("pair_sum_bracket_horizontal_half_strip", pair_sum_bracket(family, StripQuery(HORIZONTAL, _HALF))),
        ("member_sum_bracket_horizontal_half_strip", f_bracket(family, _HALF)),
    )
    mc = None
    if mc_samples > 0:
        from .montecarlo import mc_union_area

        full = StripQuery(VERTICAL, Fraction(1))
        exact = family_deviations(family, full).union_area
        est = mc_union_area(family, full, mc_samples, seed)
        mc = MCCrossCheck(
            estimate=est.estimate,
            std_error=est.std_error,
            samples=est.samples,
            seed=est.seed,
            exact_union=exact,
            within_4se=abs(est.estimate - float(exact)) <= 4 * est.std_error,
        )
    passed = prop_i and all(v < epsilon for v in sups.values())
    return VerificationReport(
        n=n,
        epsilon=epsilon,
        property_i=prop_i,
        sup_dev_ii_vertical=sups[(VERTICAL, "ii")],
        sup_dev_ii_horizontal=sups[(HORIZONTAL, "ii")],
        sup_dev_iii_vertical=sups[(VERTICAL, "iii")],
        sup_dev_iii_horizontal=sups[(HORIZONTAL, "iii")],
        diagnostics=diagnostics,
        mc_crosscheck=mc,
        passed=passed,
    )


def rational_doc(x: Fraction) -> dict:
    return {"exact": format_rational(x), "decimal": decimal_str(x)}


def bounds_doc(b: DiagnosticBounds) -> dict:
    return {
        "lower": rational_doc(b.lower),
        "upper": rational_doc(b.upper),
        "quantity": rational_doc(b.quantity),
        "within": b.within,
    }


def deviation_doc(d) -> dict:
    return {
        "union_area": rational_doc(d.union_area),
        "sum_area": rational_doc(d.sum_area),
        "pair_sum": rational_doc(d.pair_sum),
        "dev_ii": rational_doc(d.dev_ii),
        "dev_iii": rational_doc(d.dev_iii),
    }


def report_to_dict(r: VerificationReport) -> dict:
    doc = {
        "n": r.n,
        "epsilon": rational_doc(r.epsilon),
        "property_i": r.property_i,
        "sup_dev_ii": {
            "vertical": rational_doc(r.sup_dev_ii_vertical),
            "horizontal": rational_doc(r.sup_dev_ii_horizontal),
        },
        "sup_dev_iii": {
            "vertical": rational_doc(r.sup_dev_iii_vertical),
            "horizontal": rational_doc(r.sup_dev_iii_horizontal),
        },
        "diagnostics": [{"name": name, **bounds_doc(b)} for name, b in r.diagnostics],
        "mc_crosscheck": None,
        "pass": r.passed,
    }
    if r.mc_crosscheck is not None:
        mc = r.mc_crosscheck
        doc["mc_crosscheck"] = {
            "estimate": mc.estimate,
            "std_error": mc.std_error,
            "samples": mc.samples,
            "seed": mc.seed,
            "exact_union": rational_doc(mc.exact_union),
            "within_4se": mc.within_4se,
        }
    return doc
