"""End-to-end solvers built on the three discrimination gates.

* solve_unique_sat: promise s in {0, 1}; a y pre-rotation straddles the two
  candidate states across the equator and the torsion gate drives them to
  opposite poles in time K(cos(theta1/2))/g.
* solve_decision: the Morse-Smale flow leaves only the s = 0 state at |0>;
  everything else sinks to |1> within -1 + eps in logarithmic time.
* count_sat: binary search with the pitchfork gate; each step rotates a
  separation plane to the equator, lets the two hemispheres attract, and
  reads one bit of s, most significant first, on a freshly prepared ancilla
  (measurement destroys the previous one).

Readout is a deterministic sign test by default; a sampled majority-vote
mode models the physical measurement.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .bloch import BlochVector, bloch_from_statevector, encode_state, rotate_y, theta_of_s
from .encoder import run_encoding_circuit
from .errors import PromiseError, SolverInternalError
from .integrator import propagate
from .models import (
    GatePlan,
    MorseSmaleModel,
    PitchforkModel,
    TorsionModel,
    morse_smale_gate_time,
    pitchfork_gate_time,
    torsion_choose_B,
    torsion_gate_time,
)
from .sat import CnfFormula, count_solutions

DEFAULT_EPS = 1e-6
_MODES = ("analytic", "circuit")


@dataclass(frozen=True)
class ReadoutPolicy:
    """How a final height is turned into a bit.

    "sign" is deterministic (bit = 1 iff z < 0; exactly 0 reads as 0);
    "sampled" draws an odd number of single-shot outcomes with
    p(1) = (1 - z)/2 and takes the majority.
    """

    mode: str = "sign"
    repetitions: int = 11
    seed: int = 0

    def __post_init__(self):
        if self.mode not in ("sign", "sampled"):
            raise ValueError(f"readout mode must be 'sign' or 'sampled', got {self.mode!r}")
        if self.mode == "sampled" and (self.repetitions < 1 or self.repetitions % 2 == 0):
            raise ValueError(f"sampled readout needs an odd repetition count, got {self.repetitions}")


def readout(z_final: float, policy: ReadoutPolicy | None = None) -> int:
    policy = policy or ReadoutPolicy()
    if abs(z_final) > 1.0 + 1e-9:
        raise ValueError(f"|z| must be <= 1, got {z_final!r}")
    if policy.mode == "sign":
        return 1 if z_final < 0.0 else 0
    z = min(max(z_final, -1.0), 1.0)
    rng = np.random.default_rng(policy.seed)
    ones = int(np.count_nonzero(rng.random(policy.repetitions) < 0.5 * (1.0 - z)))
    return 1 if 2 * ones > policy.repetitions else 0


@dataclass
class SolveReport:
    """Solver outcome plus per-step timing and height diagnostics."""

    kind: str
    answer: int
    bits: list[int] | None
    gate_times: list[float]
    total_time: float
    preparations: int
    heights: list[float]
    params: dict
    # post-rotation heights fed to each gate; diagnostics only, not serialized
    initial_heights: list[float] = field(default_factory=list, repr=False, compare=False)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "answer": self.answer,
            "bits": self.bits,
            "gate_times": self.gate_times,
            "total_time": self.total_time,
            "preparations": self.preparations,
            "heights": self.heights,
            "params": self.params,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


class _Preparer:
    """Fresh-ancilla source; counts how many preparations were consumed."""

    def __init__(self, formula: CnfFormula, mode: str, cap: int | None = None):
        if mode not in _MODES:
            raise ValueError(f"mode must be one of {_MODES}, got {mode!r}")
        self.formula = formula
        self.mode = mode
        self.cap = cap
        self.count = 0
        if mode == "analytic":
            self._s = count_solutions(formula, cap=cap)

    def fresh(self) -> BlochVector:
        self.count += 1
        if self.mode == "circuit":
            result = run_encoding_circuit(self.formula, cap=self.cap)
            return bloch_from_statevector(result.ancilla_state)
        return encode_state(self._s, self.formula.n).bloch


def _check_common(g: float, eps: float | None) -> None:
    if not g > 0.0:
        raise ValueError(f"rate g must be positive, got {g!r}")
    if eps is not None and not (0.0 < eps < 1.0):
        raise ValueError(f"eps must be in (0, 1), got {eps!r}")


def _params(g: float, eps: float | None, mode: str, policy: ReadoutPolicy) -> dict:
    return {"g": g, "eps": eps, "mode": mode, "seed": policy.seed}


def solve_unique_sat(formula: CnfFormula, g: float = 1.0,
                     policy: ReadoutPolicy | None = None, mode: str = "analytic",
                     check_promise: bool = False, cap: int | None = None) -> SolveReport:
    """Decide s = 0 vs s = 1 under the at-most-one-solution promise.

    The promise is verified against the brute-force count only when
    check_promise is set; production calls trust the caller.
    """
    policy = policy or ReadoutPolicy()
    _check_common(g, None)
    n = formula.n
    if check_promise:
        s = count_solutions(formula, cap=cap)
        if s > 1:
            raise PromiseError(f"promise violated: instance has s={s} > 1")
    theta1 = theta_of_s(1, n)
    plan = GatePlan(
        model="torsion",
        gamma=0.5 * math.pi - 0.5 * theta1,
        t_gate=torsion_gate_time(theta1, g).exact,
    )
    prep = _Preparer(formula, mode, cap)
    rotated = rotate_y(prep.fresh(), plan.gamma)
    model = TorsionModel(g=g, B=torsion_choose_B(theta1, g))
    z_final = float(propagate(model, rotated, plan.t_gate).final[2])
    # s = 0 lands at the north pole, s = 1 at the south
    answer = readout(z_final, policy)
    return SolveReport(
        kind="unique",
        answer=answer,
        bits=None,
        gate_times=[plan.t_gate],
        total_time=plan.t_gate,
        preparations=prep.count,
        heights=[z_final],
        params=_params(g, None, mode, policy),
        initial_heights=[rotated.z],
    )


def solve_decision(formula: CnfFormula, g: float = 1.0, eps: float = DEFAULT_EPS,
                   policy: ReadoutPolicy | None = None, mode: str = "analytic",
                   cap: int | None = None) -> SolveReport:
    """Satisfiable iff the prepared state sinks under the Morse-Smale flow."""
    policy = policy or ReadoutPolicy()
    _check_common(g, eps)
    n = formula.n
    plan = GatePlan(
        model="morse-smale",
        gamma=0.0,
        t_gate=morse_smale_gate_time(n, eps, g).exact,
        eps=eps,
    )
    prep = _Preparer(formula, mode, cap)
    start = prep.fresh()
    z_final = float(propagate(MorseSmaleModel(g=g), start, plan.t_gate).final[2])
    answer = readout(z_final, policy)
    return SolveReport(
        kind="decide",
        answer=answer,
        bits=None,
        gate_times=[plan.t_gate],
        total_time=plan.t_gate,
        preparations=prep.count,
        heights=[z_final],
        params=_params(g, eps, mode, policy),
        initial_heights=[start.z],
    )


def count_sat(formula: CnfFormula, g: float = 1.0, eps: float = DEFAULT_EPS,
              policy: ReadoutPolicy | None = None, mode: str = "analytic",
              check: bool = False, cap: int | None = None) -> SolveReport:
    """Measure the exact solution count, one bit per gate, most significant first.

    The first gate separates s = 2^n from everything else (halting early on
    a hit); n bisection gates follow, each halving [s_min, s_max]. Every gate
    consumes a freshly prepared ancilla. With check set, the true count must
    stay inside the interval after every update.
    """
    policy = policy or ReadoutPolicy()
    _check_common(g, eps)
    n = formula.n
    model = PitchforkModel(g=g)
    prep = _Preparer(formula, mode, cap)
    oracle_s = count_solutions(formula, cap=cap) if check else None

    bits: list[int] = []
    gate_times: list[float] = []
    heights: list[float] = []
    initial_heights: list[float] = []

    def run_gate(theta_lo: float, theta_hi: float) -> int:
        plane = 0.5 * (theta_lo + theta_hi)
        plan = GatePlan(
            model="pitchfork",
            gamma=0.5 * math.pi - plane,
            t_gate=pitchfork_gate_time(math.sin(0.5 * (theta_hi - theta_lo)), eps, g),
            eps=eps,
        )
        rotated = rotate_y(prep.fresh(), plan.gamma)
        initial_heights.append(rotated.z)
        z_final = float(propagate(model, rotated, plan.t_gate).final[2])
        gate_times.append(plan.t_gate)
        heights.append(z_final)
        return readout(z_final, policy)

    # most significant bit: is s = 2^n?
    bit = run_gate(theta_of_s(2**n - 1, n), theta_of_s(2**n, n))
    bits.append(bit)
    if bit == 1:
        bits.extend([0] * n)
        s = 2**n
    else:
        s_min, s_max = 0, 2**n - 1
        for _ in range(n):
            size = s_max - s_min + 1
            k = (s_min + s_max) // 2
            bit = run_gate(theta_of_s(k, n), theta_of_s(k + 1, n))
            bits.append(bit)
            if bit == 0:
                s_max = k
            else:
                s_min = k + 1
            if s_min > s_max:
                raise SolverInternalError(f"empty interval [{s_min}, {s_max}]")
            if 2 * (s_max - s_min + 1) != size:
                raise SolverInternalError(
                    f"interval size {size} did not halve to {s_max - s_min + 1}"
                )
            if check and not (s_min <= oracle_s <= s_max):
                raise SolverInternalError(
                    f"oracle count {oracle_s} escaped interval [{s_min}, {s_max}]"
                )
        if s_min != s_max:
            raise SolverInternalError(f"interval [{s_min}, {s_max}] did not collapse")
        s = s_min

    return SolveReport(
        kind="count",
        answer=s,
        bits=bits,
        gate_times=gate_times,
        total_time=float(sum(gate_times)),
        preparations=prep.count,
        heights=heights,
        params=_params(g, eps, mode, policy),
        initial_heights=initial_heights,
    )


class CountTimeBudget:
    """Worst-case counting time: (n+1) gates at the smallest initial height."""

    __slots__ = ("total", "per_gate", "asymptotic")

    def __init__(self, total: float, per_gate: float, asymptotic: float):
        self.total = total
        self.per_gate = per_gate
        self.asymptotic = asymptotic


def total_time_report(n: int, eps: float = DEFAULT_EPS, g: float = 1.0) -> CountTimeBudget:
    """Budget for count_sat: the worst step starts at |z| = sin(theta_1/2) ~ 2^-n.

    asymptotic carries the n * log(2^n / sqrt(eps)) / g growth form for
    scaling tables.
    """
    _check_common(g, eps)
    theta1 = theta_of_s(1, n)
    per_gate = pitchfork_gate_time(math.sin(0.5 * theta1), eps, g)
    asymptotic = n * (n * math.log(2.0) + 0.5 * math.log(1.0 / eps)) / g
    return CountTimeBudget((n + 1) * per_gate, per_gate, asymptotic)
