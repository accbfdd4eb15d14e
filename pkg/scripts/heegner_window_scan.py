#!/usr/bin/env python3
"""Window fractions of Heegner points against the hyperbolic-measure limit.

Scans primes q = 3 (mod 4) starting at --qmin, computes the fraction of
reduced-form Heegner points with height in [1, 10], and tracks the running
mean against 27/(10*pi) = 0.85944, the measure of that window.

    python scripts/heegner_window_scan.py --qmin 100000 --count 200
"""

import argparse
import sys

from rootsums.primes import primes_between
from rootsums.quadforms import DUKE_LIMIT_FRACTION, class_number, heegner_fraction


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--qmin", type=int, default=10**5)
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--every", type=int, default=10, help="print a running line every k moduli")
    args = ap.parse_args()

    total = 0.0
    seen = 0
    lo = args.qmin
    while seen < args.count:
        for q in primes_between(lo, lo + 10**4):
            q = int(q)
            if q % 4 != 3:
                continue
            frac = heegner_fraction(q)
            total += frac
            seen += 1
            if seen % args.every == 0 or seen == args.count:
                mean = total / seen
                print(
                    f"n={seen:4d} q={q} h={class_number(q):5d} frac={frac:.4f} "
                    f"running_mean={mean:.5f} target={DUKE_LIMIT_FRACTION:.5f} "
                    f"dev={abs(mean - DUKE_LIMIT_FRACTION):.5f}"
                )
            if seen == args.count:
                break
        lo += 10**4
    return 0


if __name__ == "__main__":
    sys.exit(main())
