#!/usr/bin/env python3
"""Dump per-model grid diagnostics (div, curl, tangency) for external plotting."""

import argparse

from nlq.bloch import theta_of_s
from nlq.fields import diagnostics_csv
from nlq.models import MorseSmaleModel, PitchforkModel, TorsionModel, torsion_choose_B


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--g", type=float, default=1.0)
    ap.add_argument("--n", type=int, default=4, help="bit count fixing the torsion x field")
    ap.add_argument("--prefix", default="portrait")
    args = ap.parse_args()
    models = {
        "torsion": TorsionModel(g=args.g, B=torsion_choose_B(theta_of_s(1, args.n), args.g)),
        "morse-smale": MorseSmaleModel(g=args.g),
        "pitchfork": PitchforkModel(g=args.g),
    }
    for name, model in models.items():
        path = f"{args.prefix}_{name}.csv"
        with open(path, "w", newline="\n") as fh:
            fh.write(diagnostics_csv(model))
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
