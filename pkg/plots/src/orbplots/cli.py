"""orbnet-plots: render figures from orbnet output files."""

from __future__ import annotations

import argparse
import sys

from .io import SchemaError
from .render import KINDS, FigureSpec, render


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orbnet-plots", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)
    r = sub.add_parser("render", help="render one figure from CSV / edge-list input")
    r.add_argument("--kind", required=True, choices=KINDS)
    r.add_argument("--in", dest="inputs", action="append", required=True,
                   help="input file (repeatable)")
    r.add_argument("--out", required=True, help="output image path (.png)")
    r.add_argument("--layout", choices=["circular", "spring"], default="circular",
                   help="graph-layout embedding")
    r.add_argument("--seed", type=int, default=0, help="spring layout seed")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(kind=args.kind, inputs=tuple(args.inputs), output=args.out,
                      layout=args.layout, seed=args.seed)
    try:
        out = render(spec)
    except (SchemaError, OSError) as exc:
        print(f"orbnet-plots: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
