#!/usr/bin/env python3
"""Render a gallery of families as SVG files, one per odd n."""

import argparse
import pathlib
import sys

from nikodym.construction import build_family
from nikodym.svg import render_family_svg


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ns", default="3,5,9,15", help="comma list of odd n")
    ap.add_argument("--out-dir", default="gallery")
    args = ap.parse_args()

    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for tok in args.ns.split(","):
        n = int(tok)
        path = out / f"family_n{n}.svg"
        path.write_text(render_family_svg(build_family(n)))
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
