#!/usr/bin/env python3
"""Produce (and optionally plot) the sigma(h) decay-curve data.

Thin consumer of the sweep CSV: either point it at a file written by
`blowup-profiles sweep`, or let it generate one in-process.  Plotting is
optional and only attempted when matplotlib is importable.

    python scripts/figure_sigma_curve.py --steps 60 --out sigma.csv --plot fig.png
    python scripts/figure_sigma_curve.py --csv sigma.csv --plot fig.png
"""

from __future__ import annotations

import argparse
import csv
import sys


def load_rows(path: str) -> list[dict]:
    with open(path) as fh:
        return [dict((k, float(v)) for k, v in row.items())
                for row in csv.DictReader(fh)]


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--csv", help="existing sweep CSV to plot")
    ap.add_argument("--h-inv-min", type=float, default=0.1)
    ap.add_argument("--h-inv-max", type=float, default=6.0)
    ap.add_argument("--steps", type=int, default=60)
    ap.add_argument("--out", default="sigma_sweep.csv")
    ap.add_argument("--plot", help="write a two-panel PNG here")
    args = ap.parse_args()

    if args.csv:
        rows = load_rows(args.csv)
    else:
        from blowup_profiles import cli
        code = cli.main(["sweep", "--h-inv-min", str(args.h_inv_min),
                         "--h-inv-max", str(args.h_inv_max),
                         "--steps", str(args.steps), "--out", args.out])
        if code != 0:
            return code
        print(f"wrote {args.out}")
        rows = load_rows(args.out)

    if not args.plot:
        return 0
    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib not available; skipping the plot", file=sys.stderr)
        return 0

    h_inv = [r["h_inv"] for r in rows]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    ax1.plot(h_inv, [r["sigma"] for r in rows], "k-")
    ax1.set_xlabel(r"$h^{-1}$")
    ax1.set_ylabel(r"$\sigma(h)$")
    ax2.plot(h_inv, [r["log_sigma"] for r in rows], "k-", label=r"$\log\sigma(h)$")
    ax2.plot(h_inv, [r["asym_log_sigma"] for r in rows], "r--",
             label=r"$\log 2 - \pi h^{-1} + \log h^{-1}$")
    ax2.set_xlabel(r"$h^{-1}$")
    ax2.legend()
    fig.tight_layout()
    fig.savefig(args.plot, dpi=150)
    print(f"wrote {args.plot}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
