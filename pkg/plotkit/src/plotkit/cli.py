"""Command line: render one standard figure from an experiment CSV."""

from __future__ import annotations

import argparse
import sys

from .render import FIGURES, figure_spec, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="plotkit")
    sub = parser.add_subparsers(dest="action", required=True)
    r = sub.add_parser("render", help="render a figure from a CSV")
    r.add_argument("--csv", required=True)
    r.add_argument("--figure", type=int, required=True, choices=sorted(FIGURES))
    r.add_argument("--out", required=True)
    args = parser.parse_args(argv)
    try:
        path = render(figure_spec(args.figure, args.csv), args.out)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"figure {args.figure}: {args.csv} -> {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
