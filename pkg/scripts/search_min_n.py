#!/usr/bin/env python3
"""Tabulate the smallest passing odd n over a list of tolerances."""

import argparse
import sys

from nikodym.measure import min_odd_n
from nikodym.rational import parse_rational


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--epsilons", default="2/5,1/4,1/6,1/10,1/20")
    ap.add_argument("--cap", type=int, default=101)
    args = ap.parse_args()

    print(f"{'epsilon':>10}  minimal odd n (cap {args.cap})")
    for tok in args.epsilons.split(","):
        eps = parse_rational(tok)
        found = min_odd_n(eps, args.cap)
        print(f"{tok:>10}  {found if found is not None else 'not found'}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
