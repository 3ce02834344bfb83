"""Command-line front end.

Subcommands: count / decide / unique (solvers over DIMACS files, JSON
reports), encode (amplitude-encoding diagnostics), trajectory (CSV paths
and field-grid diagnostics), bench (gate-time scaling tables).

Exit codes: 0 ok, 1 verification mismatch, 2 parse/usage error,
3 resource cap exceeded, 4 solver contract not honored.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .bloch import BlochVector, SphericalPoint, spherical_to_bloch, theta_of_s
from .encoder import run_encoding_circuit, sample_preparation
from .errors import DimacsParseError, PromiseError, ResourceLimitError
from .fields import diagnostics_csv
from .integrator import propagate
from .models import (
    MorseSmaleModel,
    PitchforkModel,
    TorsionModel,
    morse_smale_gate_time,
    torsion_choose_B,
    torsion_gate_time,
)
from .sat import count_solutions, parse_dimacs
from .solvers import ReadoutPolicy, count_sat, solve_decision, solve_unique_sat, total_time_report

MODEL_CHOICES = ("torsion", "morse-smale", "pitchfork")
BENCH_COLUMNS = (
    "n",
    "eps",
    "torsion_tg",
    "torsion_tg_approx",
    "morse_smale_tg",
    "morse_smale_tg_approx",
    "pitchfork_tg",
    "count_total_time",
    "count_time_asymptotic",
)


def _add_solver_flags(sp: argparse.ArgumentParser, with_eps: bool = True) -> None:
    sp.add_argument("--g", type=float, default=1.0, help="nonlinearity rate (1/time)")
    if with_eps:
        sp.add_argument("--eps", type=float, default=1e-6, help="final-height error budget")
    sp.add_argument("--seed", type=int, default=0, help="seed for sampled readout")
    sp.add_argument("--mode", choices=["analytic", "circuit"], default="analytic",
                    help="ancilla preparation path")
    sp.add_argument("--readout", choices=["sign", "sampled"], default="sign")
    sp.add_argument("--reps", type=int, default=11, help="repetitions for sampled readout")
    sp.add_argument("--verify", action="store_true",
                    help="also run the brute-force oracle and fail on mismatch")
    sp.add_argument("--format", choices=["json"], default="json")
    sp.add_argument("--out", default=None, help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nlq", description="nonlinear single-qubit gates applied to satisfiability"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("count", help="measure the exact solution count")
    sp.add_argument("file", help="DIMACS CNF input")
    _add_solver_flags(sp)
    sp.set_defaults(func=_cmd_count)

    sp = sub.add_parser("decide", help="decide satisfiability")
    sp.add_argument("file")
    _add_solver_flags(sp)
    sp.set_defaults(func=_cmd_decide)

    sp = sub.add_parser("unique", help="decide s=0 vs s=1 under the promise")
    sp.add_argument("file")
    sp.add_argument("--promise", action="store_true",
                    help="acknowledge that the instance has at most one solution")
    _add_solver_flags(sp, with_eps=False)
    sp.set_defaults(func=_cmd_unique)

    sp = sub.add_parser("encode", help="amplitude-encoding diagnostics for a formula")
    sp.add_argument("file")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=_cmd_encode)

    sp = sub.add_parser("trajectory", help="integrate a model and emit CSV")
    sp.add_argument("--model", choices=MODEL_CHOICES, required=True)
    sp.add_argument("--g", type=float, default=1.0)
    sp.add_argument("--theta0", type=float, default=None, help="initial polar angle (radians)")
    sp.add_argument("--phi0", type=float, default=0.0, help="initial azimuth (radians)")
    sp.add_argument("--n", type=int, default=None,
                    help="bit count; torsion uses the unique-SAT gate geometry for n")
    sp.add_argument("--gt", type=float, default=None, help="duration in units of 1/g")
    sp.add_argument("--field-grid", action="store_true",
                    help="emit grid diagnostics (theta,phi,div_v,curl_u,tangency_residual)")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=_cmd_trajectory)

    sp = sub.add_parser("bench", help="gate-time scaling tables")
    sp.add_argument("--n-min", type=int, default=2)
    sp.add_argument("--n-max", type=int, default=20)
    sp.add_argument("--eps", type=float, action="append", default=None,
                    help="error budget; may be given multiple times")
    sp.add_argument("--g", type=float, default=1.0)
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=_cmd_bench)

    return parser


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


def _load(path: str):
    with open(path) as fh:
        return parse_dimacs(fh.read())


def _policy(args) -> ReadoutPolicy:
    return ReadoutPolicy(mode=args.readout, repetitions=args.reps, seed=args.seed)


def _cmd_count(args) -> int:
    formula = _load(args.file)
    report = count_sat(formula, g=args.g, eps=args.eps, policy=_policy(args),
                       mode=args.mode, check=args.verify)
    if args.verify and report.answer != count_solutions(formula):
        sys.stderr.write(
            f"verify failed: reported {report.answer}, oracle {count_solutions(formula)}\n"
        )
        return 1
    _emit(report.to_json(), args.out)
    return 0


def _cmd_decide(args) -> int:
    formula = _load(args.file)
    report = solve_decision(formula, g=args.g, eps=args.eps, policy=_policy(args),
                            mode=args.mode)
    if args.verify and report.answer != int(count_solutions(formula) > 0):
        sys.stderr.write("verify failed: decision disagrees with the oracle\n")
        return 1
    _emit(report.to_json(), args.out)
    return 0


def _cmd_unique(args) -> int:
    if not (args.promise or args.verify):
        sys.stderr.write(
            "unique requires --promise (the s <= 1 contract) or --verify\n"
        )
        return 4
    formula = _load(args.file)
    report = solve_unique_sat(formula, g=args.g, policy=_policy(args), mode=args.mode,
                              check_promise=args.verify)
    if args.verify and report.answer != count_solutions(formula):
        sys.stderr.write("verify failed: unique answer disagrees with the oracle\n")
        return 1
    _emit(report.to_json(), args.out)
    return 0


def _cmd_encode(args) -> int:
    formula = _load(args.file)
    result = run_encoding_circuit(formula)
    _, attempts = sample_preparation(formula, seed=args.seed)
    payload = {
        "s": result.s,
        "theta_s": result.encoded.theta_s,
        "success_probability": result.success_probability,
        "attempts": attempts,
    }
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def _make_model(name: str, g: float, n: int | None):
    if name == "torsion":
        theta1 = theta_of_s(1, n if n is not None else 4)
        return TorsionModel(g=g, B=torsion_choose_B(theta1, g))
    if name == "morse-smale":
        return MorseSmaleModel(g=g)
    return PitchforkModel(g=g)


def _cmd_trajectory(args) -> int:
    g = args.g
    model = _make_model(args.model, g, args.n)
    if args.field_grid:
        _emit(diagnostics_csv(model), args.out)
        return 0
    if args.model == "torsion":
        if args.n is None:
            sys.stderr.write("trajectory --model torsion requires --n\n")
            return 2
        theta1 = theta_of_s(1, args.n)
        r0 = BlochVector(math.cos(0.5 * theta1), 0.0, math.sin(0.5 * theta1))
        duration = (args.gt / g) if args.gt is not None else torsion_gate_time(theta1, g).exact
        energy_fn = model.energy
    else:
        if args.theta0 is None or args.gt is None:
            sys.stderr.write(f"trajectory --model {args.model} requires --theta0 and --gt\n")
            return 2
        r0 = spherical_to_bloch(SphericalPoint(args.theta0, args.phi0))
        duration = args.gt / g
        energy_fn = None
    traj = propagate(model, r0, duration)
    _emit(traj.to_csv(energy=energy_fn), args.out)
    return 0


def _cmd_bench(args) -> int:
    eps_list = args.eps if args.eps else [1e-6]
    g = args.g
    rows = []
    for n in range(args.n_min, args.n_max + 1):
        tor = torsion_gate_time(theta_of_s(1, n), g)
        for eps in eps_list:
            ms = morse_smale_gate_time(n, eps, g)
            budget = total_time_report(n, eps, g)
            rows.append(
                {
                    "n": n,
                    "eps": eps,
                    "torsion_tg": tor.exact,
                    "torsion_tg_approx": tor.approx,
                    "morse_smale_tg": ms.exact,
                    "morse_smale_tg_approx": ms.approx,
                    "pitchfork_tg": budget.per_gate,
                    "count_total_time": budget.total,
                    "count_time_asymptotic": budget.asymptotic,
                }
            )
    if args.format == "json":
        _emit(json.dumps(rows, indent=2) + "\n", args.out)
    else:
        lines = [",".join(BENCH_COLUMNS)]
        for row in rows:
            lines.append(",".join(repr(row[c]) if isinstance(row[c], float) else str(row[c])
                                  for c in BENCH_COLUMNS))
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DimacsParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return 2
    except FileNotFoundError as exc:
        sys.stderr.write(f"cannot read input: {exc}\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(f"invalid argument: {exc}\n")
        return 2
    except ResourceLimitError as exc:
        sys.stderr.write(f"resource limit: {exc}\n")
        return 3
    except PromiseError as exc:
        sys.stderr.write(f"contract violation: {exc}\n")
        return 4


if __name__ == "__main__":
    raise SystemExit(main())
