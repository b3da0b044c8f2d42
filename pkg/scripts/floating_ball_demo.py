"""Floating bodies of the unit ball, against the closed-form cap oracle.

The floating body of a ball is a concentric ball; its radius solves
pi h^2 (3 - h) / 3 = delta with h = 1 - r.  The script builds the
halfspace approximation at several fractions and reports how far the
computed vertices deviate from that radius.
"""

import argparse
import math

import numpy as np
from scipy.optimize import brentq

from equichord import CutSpec, ball_profile, convex_floating_body, dupin_check


def oracle_radius(fraction: float) -> float:
    target = fraction * 4.0 * math.pi / 3.0

    def cap(r):
        h = 1.0 - r
        return math.pi * h * h * (3.0 - h) / 3.0 - target

    return brentq(cap, 0.0, 1.0)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dirs", type=int, default=400,
                    help="number of cutting directions")
    ap.add_argument("--fractions", type=float, nargs="+",
                    default=[0.05, 0.1, 0.2, 0.3])
    args = ap.parse_args()

    body = ball_profile(1.0)
    print(f"{'fraction':>9} {'r_oracle':>14} {'max|v|-r':>12} "
          f"{'r-min|v|':>12} {'dupin':>10}")
    for frac in args.fractions:
        cut = CutSpec(fraction=frac)
        ap_body = convex_floating_body(body, cut, args.dirs)
        dup = dupin_check(body, ap_body, cut)
        r_star = oracle_radius(frac)
        radii = np.linalg.norm(ap_body.boundary_points(), axis=1)
        print(f"{frac:9.3f} {r_star:14.10f} "
              f"{float(np.max(radii)) - r_star:12.3e} "
              f"{r_star - float(np.min(radii)):12.3e} "
              f"{dup.max_mismatch:10.2e}")
    print("\nvertex excess shrinks as the direction grid refines; the faces "
          "sit on the oracle sphere by construction")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
