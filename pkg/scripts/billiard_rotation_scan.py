"""Scan tangent-chord orbits in a circular annulus for closure.

The rotation per step around concentric circles is 2 acos(r / R);
orbits close exactly when that angle is a rational multiple of 2 pi.
The scan reports the estimated rotation against the closed form and
which inner radii produce short closed orbits.
"""

import argparse
import math

import numpy as np

from equichord import disc_body, orbit


def trace(R: float, r: float, steps: int):
    beta0 = np.array([R, 0.0])
    return orbit(disc_body(R), disc_body(r), beta0, max_steps=steps)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outer-radius", type=float, default=2.0)
    ap.add_argument("--steps", type=int, default=60)
    args = ap.parse_args()

    R = args.outer_radius
    print(f"outer radius {R}; rotation oracle 2 acos(r/R)")
    print(f"{'r':>7} {'rotation':>12} {'oracle':>12} {'closed':>7} {'period':>7}")
    for k in range(2, 19):
        r = R * k / 20.0
        rec = trace(R, r, args.steps)
        oracle = 2.0 * math.acos(r / R)
        period = rec.period if rec.closed else "-"
        print(f"{r:7.3f} {rec.rotation_estimate:12.8f} {oracle:12.8f} "
              f"{str(rec.closed):>7} {period:>7}")

    # the classical short closures
    for r, name in ((R / 2.0, "period 3"), (R / math.sqrt(2.0), "period 4"),
                    (R * math.cos(math.pi / 5.0), "period 5")):
        rec = trace(R, r, 12)
        spread = float(np.max(rec.chord_lengths) - np.min(rec.chord_lengths))
        print(f"\nr={r:.6f} ({name}): closed={rec.closed} "
              f"period={rec.period} chord_spread={spread:.2e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
