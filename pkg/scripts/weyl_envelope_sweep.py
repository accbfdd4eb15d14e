#!/usr/bin/env python3
"""Sweep the bilinear Weyl sums over a modulus grid and plot-ready CSV.

Runs the full three-weight-class grid for the given moduli and reports, per
modulus and weight class, the largest measured/envelope ratio for both
envelopes.  Useful for eyeballing how much slack the envelopes leave and
whether any weight class gets close to them.

    python scripts/weyl_envelope_sweep.py --qset 101,499,1009 --out sweep.csv
"""

import argparse
import csv
import sys
from collections import defaultdict

from rootsums.bilinear import weyl_sweep


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--qset", default="101,211,499,1009")
    ap.add_argument("--instances", type=int, default=20)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--slack-exponent", type=float, default=2.0)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    q_values = tuple(int(v) for v in args.qset.split(","))
    rows = weyl_sweep(
        q_values=q_values,
        instances=args.instances,
        seed=args.seed,
        slack_exponent=args.slack_exponent,
    )
    worst = defaultdict(lambda: [0.0, 0.0])
    for row in rows:
        key = (row["q"], row["kind"])
        worst[key][0] = max(worst[key][0], row["ratio1"])
        worst[key][1] = max(worst[key][1], row["ratio2"])

    handle = open(args.out, "w", newline="") if args.out else sys.stdout
    writer = csv.writer(handle)
    writer.writerow(["q", "kind", "max_ratio1", "max_ratio2", "cells"])
    for (q, kind), (r1, r2) in sorted(worst.items()):
        n_cells = sum(1 for row in rows if row["q"] == q and row["kind"] == kind)
        writer.writerow([q, kind, f"{r1:.6g}", f"{r2:.6g}", n_cells])
    if args.out:
        handle.close()
        print(f"wrote {args.out} ({len(worst)} summary rows from {len(rows)} cells)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
