"""nsac-plot: render figures from nsac1d output files.

Subcommands: snapshot (three-panel state figure from a spec file) and
convergence (log-log error curves from a sweep report).  Exit codes:
0 success, 2 bad input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .figspec import load_figure_spec
from .inputs import PlotInputError
from .render import render_convergence, render_snapshot_figure


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nsac-plot", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("snapshot", help="three-panel rho/u/chi figure")
    p.add_argument("--spec", type=Path, required=True,
                   help="plain-text key-value figure spec")

    p = sub.add_parser("convergence", help="sup errors vs eps, log-log")
    p.add_argument("--report", type=Path, required=True)
    p.add_argument("--out", type=Path, default=None)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "snapshot":
            out = render_snapshot_figure(load_figure_spec(args.spec))
        else:
            out = render_convergence(args.report, args.out)
    except PlotInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
