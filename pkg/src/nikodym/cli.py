"""Command-line driver.

Exit codes are a stable contract: 0 = pass/success, 1 = well-formed
failure (verification fail or search not-found), 2 = usage error,
3 = internal consistency violation. Reports are byte-reproducible for
identical flags. The NIKODYM_WORKERS environment variable sets the
worker count for grid evaluations (default 1).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .construction import build_family, family_to_dict
from .measure import ConsistencyError, min_odd_n
from .rational import decimal_str, format_rational, parse_rational
from .report import report_to_dict, run_verification
from .svg import render_family_svg

__all__ = ["main"]


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _json_text(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _parse_ns(text: str) -> list[int]:
    """Comma list of odd n, or an inclusive odd range "a..b"."""
    if ".." in text:
        a, b = text.split("..", 1)
        lo, hi = int(a), int(b)
        ns = [n for n in range(lo, hi + 1) if n % 2 == 1]
    else:
        ns = [int(tok) for tok in text.split(",") if tok.strip()]
    if not ns:
        raise ValueError("empty n list")
    return ns


def _cmd_generate(args) -> int:
    family = build_family(args.n)
    _write_output(_json_text(family_to_dict(family)), args.out)
    return 0


def _cmd_verify(args) -> int:
    epsilon = parse_rational(args.epsilon)
    grid = parse_rational(args.grid_step) if args.grid_step else None
    report = run_verification(
        args.n, epsilon, grid_step=grid, mc_samples=args.mc_samples, seed=args.seed
    )
    _write_output(_json_text(report_to_dict(report)), args.out)
    return 0 if report.passed else 1


def _cmd_min_n(args) -> int:
    epsilon = parse_rational(args.epsilon)
    grid = parse_rational(args.grid_step) if args.grid_step else None
    found = min_odd_n(epsilon, args.cap, grid_step=grid)
    doc = {
        "epsilon": {"exact": format_rational(epsilon), "decimal": decimal_str(epsilon)},
        "n_cap": args.cap,
        "found": found,
        "report": None,
    }
    if found is not None:
        doc["report"] = report_to_dict(run_verification(found, epsilon, grid_step=grid))
    _write_output(_json_text(doc), args.out)
    return 0 if found is not None else 1


def _cmd_render(args) -> int:
    family = build_family(args.n)
    _write_output(render_family_svg(family), args.out)
    return 0


def _cmd_sweep(args) -> int:
    from .construction import covers_epsilon_band
    from .measure import HORIZONTAL, VERTICAL, sup_deviation

    ns = _parse_ns(args.ns)
    epsilons = [parse_rational(tok) for tok in args.epsilons.split(",") if tok.strip()]
    if not epsilons:
        raise ValueError("empty epsilon list")
    grid = parse_rational(args.grid_step) if args.grid_step else None
    rows = ["n,epsilon,sup_dev_ii_v,sup_dev_ii_h,sup_dev_iii_v,sup_dev_iii_h,covers,pass"]
    for n in ns:
        family = build_family(n)
        sups = {
            (axis, which): sup_deviation(family, axis, which, grid)
            for axis in (VERTICAL, HORIZONTAL)
            for which in ("ii", "iii")
        }
        for eps in epsilons:
            covers = covers_epsilon_band(family, eps)
            passed = covers and all(v < eps for v in sups.values())
            rows.append(
                ",".join(
                    [
                        str(n),
                        format_rational(eps),
                        decimal_str(sups[(VERTICAL, "ii")]),
                        decimal_str(sups[(HORIZONTAL, "ii")]),
                        decimal_str(sups[(VERTICAL, "iii")]),
                        decimal_str(sups[(HORIZONTAL, "iii")]),
                        str(covers).lower(),
                        str(passed).lower(),
                    ]
                )
            )
    _write_output("\n".join(rows) + "\n", args.out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nikodym",
        description="Exact verification of slanted parallelogram families over the unit square.",
        epilog="Set NIKODYM_WORKERS to parallelize grid evaluations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit a family document as JSON")
    p.add_argument("--n", type=int, required=True, help="odd family order n >= 3")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("verify", help="certify coverage and deviation bounds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--epsilon", required=True, help='tolerance, e.g. "1/10" or "0.1"')
    p.add_argument("--grid-step", default=None, help="supremum grid step (default 1/(4n^2))")
    p.add_argument("--mc-samples", type=int, default=0, help="optional Monte Carlo cross-check")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("min-n", help="search the smallest passing odd n")
    p.add_argument("--epsilon", required=True)
    p.add_argument("--cap", type=int, default=101)
    p.add_argument("--grid-step", default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=_cmd_min_n)

    p = sub.add_parser("render", help="draw the family as SVG")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["svg"], default="svg")
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("sweep", help="CSV of deviation bounds over n and epsilon lists")
    p.add_argument("--ns", required=True, help='odd n list: "3,5,7" or range "3..41"')
    p.add_argument("--epsilons", required=True, help='comma list, e.g. "1/10,1/4"')
    p.add_argument("--grid-step", default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["csv"], default="csv")
    p.set_defaults(func=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConsistencyError as exc:
        print(f"internal consistency violation: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
