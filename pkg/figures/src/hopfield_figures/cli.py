"""CLI for regenerating paper-style figures from simulation CSVs."""

from __future__ import annotations

import argparse
import sys

from .render import render
from .spec import FAMILIES, FigureSpec


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="hopfield-figures",
                                     description="Render figures from hopfield-proto CSV outputs")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("render", help="render one figure")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--input", action="append", required=True, help="input file (repeatable)")
    p.add_argument("--hue", default=None, help="column to color series by")
    p.add_argument("--facet", default=None, help="column to split panels by")
    p.add_argument("--examples-per-base", type=int, default=4,
                   help="state-strip only: example rows shown per base")
    p.add_argument("--out", required=True)

    args = parser.parse_args(argv)
    spec = FigureSpec(
        inputs=tuple(args.input),
        family=args.family,
        out=args.out,
        hue=args.hue,
        facet=args.facet,
        options={"examples_per_base": args.examples_per_base},
    )
    try:
        path = render(spec)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
