#!/usr/bin/env python3
"""Show the trace-distance monotonicity violation the torsion gate relies on.

The two promise states start exponentially close (chord ~ 2^(1-n)) and end
antipodal. No linear channel can increase that first column.
"""

import argparse

from nlq.bloch import theta_of_s
from nlq.integrator import monotonicity_violation_demo
from nlq.models import torsion_gate_time


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=12)
    ap.add_argument("--g", type=float, default=1.0)
    args = ap.parse_args()
    print(f"{'n':>3} {'initial |dr|':>14} {'final |dr|':>12} {'gate time':>10}")
    for n in range(2, args.n_max + 1):
        initial, final = monotonicity_violation_demo(n, g=args.g)
        t_gate = torsion_gate_time(theta_of_s(1, n), args.g).exact
        print(f"{n:>3} {initial:>14.6e} {final:>12.8f} {t_gate:>10.5f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
