#!/usr/bin/env python3
"""Emit the gate-time scaling tables (CSV) used to check the complexity claims.

Torsion grows by log(2)/g per bit, the decision gate like (1/4g) log(2^(2n+1)/eps),
and total counting time is (n+1) gates, i.e. O(n^2) for fixed eps.
"""

import argparse

from nlq.cli import main as nlq_main


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=60)
    ap.add_argument("--out", default="scaling_tables.csv")
    args = ap.parse_args()
    code = nlq_main(
        ["bench", "--n-min", "2", "--n-max", str(args.n_max),
         "--eps", "1e-6", "--eps", "1e-9", "--out", args.out]
    )
    if code == 0:
        print(f"wrote {args.out}")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
