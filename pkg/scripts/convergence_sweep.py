#!/usr/bin/env python3
"""Sweep the certified deviation bounds over odd n and plot convergence.

Writes a CSV (same schema as `nikodym sweep`) and, with --plot, a log-log
PNG of the four sup-deviation bounds against n.
"""

import argparse
import csv
import sys
from fractions import Fraction

from nikodym.construction import build_family, covers_epsilon_band
from nikodym.measure import sup_deviation
from nikodym.rational import decimal_str, format_rational, parse_rational


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=41)
    ap.add_argument("--epsilon", default="1/10")
    ap.add_argument("--grid-step", default=None, help="default: certified 1/(4n^2) per n")
    ap.add_argument("--csv", default="convergence.csv")
    ap.add_argument("--plot", default=None, help="optional PNG path")
    args = ap.parse_args()

    eps = parse_rational(args.epsilon)
    grid = parse_rational(args.grid_step) if args.grid_step else None
    rows = []
    for n in range(3, args.n_max + 1, 2):
        fam = build_family(n)
        sups = {
            (axis, which): sup_deviation(fam, axis, which, grid)
            for axis in ("vertical", "horizontal")
            for which in ("ii", "iii")
        }
        covers = covers_epsilon_band(fam, eps)
        rows.append((n, sups, covers, covers and all(v < eps for v in sups.values())))
        print(
            f"n={n:3d}  ii_v={float(sups[('vertical','ii')]):.5f} "
            f"ii_h={float(sups[('horizontal','ii')]):.5f} "
            f"iii_v={float(sups[('vertical','iii')]):.5f} "
            f"iii_h={float(sups[('horizontal','iii')]):.5f}  covers={covers}"
        )

    with open(args.csv, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "epsilon", "sup_dev_ii_v", "sup_dev_ii_h", "sup_dev_iii_v", "sup_dev_iii_h", "covers", "pass"])
        for n, sups, covers, ok in rows:
            w.writerow(
                [n, format_rational(eps)]
                + [decimal_str(sups[k]) for k in (("vertical", "ii"), ("horizontal", "ii"), ("vertical", "iii"), ("horizontal", "iii"))]
                + [str(covers).lower(), str(ok).lower()]
            )
    print(f"wrote {args.csv}")

    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        ns = [r[0] for r in rows]
        fig, ax = plt.subplots(figsize=(7, 5))
        labels = {
            ("vertical", "ii"): "sup dev (ii), vertical",
            ("horizontal", "ii"): "sup dev (ii), horizontal",
            ("vertical", "iii"): "sup dev (iii), vertical",
            ("horizontal", "iii"): "sup dev (iii), horizontal",
        }
        for key, label in labels.items():
            ax.plot(ns, [float(r[1][key]) for r in rows], marker="o", ms=3, label=label)
        ax.axhline(float(eps), color="k", ls="--", lw=1, label=f"epsilon = {eps}")
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel("n (odd)")
        ax.set_ylabel("certified sup deviation bound")
        ax.legend(fontsize=8)
        fig.tight_layout()
        fig.savefig(args.plot, dpi=150)
        print(f"wrote {args.plot}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
