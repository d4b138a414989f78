"""SVG rendering of a family over the unit square.

The viewBox is 1000 x 1000 with the y axis flipped so the left sides of
the parallelograms sit on the left edge, matching the coordinates used
throughout the package. Rising members share one fill class, falling
members another, and the swept left-edge cover interval is drawn as a
thick line on x = 0. Exactly one <polygon> element per family member.
"""

from __future__ import annotations

from fractions import Fraction

from .construction import Family, family_polygons, left_cover_interval
from .geometry import ConvexPolygon

__all__ = ["render_family_svg"]

_SIZE = 1000.0

_STYLE = (
    ".q{fill:#4878cf;fill-opacity:0.45;stroke:#2a4d8f;stroke-width:0.5}"
    ".r{fill:#d65f5f;fill-opacity:0.45;stroke:#8f2a2a;stroke-width:0.5}"
    ".frame{fill:none;stroke:#222;stroke-width:1.5}"
    ".cover{stroke:#1a9641;stroke-width:8;stroke-linecap:butt}"
)


def _fx(v: Fraction) -> str:
    # 12 decimals keeps the round-trip error well under 1e-12 in unit coords.
    return f"{float(v) * _SIZE:.12f}"


def _fy(v: Fraction) -> str:
    return f"{_SIZE - float(v) * _SIZE:.12f}"


def _poly_element(poly: ConvexPolygon, cls: str) -> str:
    pts = " ".join(f"{_fx(v.x)},{_fy(v.y)}" for v in poly.vertices)
    return f'<polygon class="{cls}" points="{pts}"/>'


def render_family_svg(f: Family) -> str:
    q_polys, r_polys = family_polygons(f)
    lo, hi = left_cover_interval(f)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_SIZE:.0f} {_SIZE:.0f}">',
        f"<style>{_STYLE}</style>",
        f'<rect class="frame" x="0" y="0" width="{_SIZE:.0f}" height="{_SIZE:.0f}"/>',
    ]
    lines.extend(_poly_element(p, "q") for p in q_polys)
    lines.extend(_poly_element(p, "r") for p in r_polys)
    lines.append(f'<line class="cover" x1="0" y1="{_fy(lo)}" x2="0" y2="{_fy(hi)}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
