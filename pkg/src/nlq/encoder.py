"""Statevector simulation of the amplitude-encoding circuit.

A uniform superposition over all n-bit assignments, an oracle that XORs
f(x) into an ancilla, a second Hadamard layer, and projection of the first
register onto the all-zeros string leave the ancilla in the count state
((2^n - s)|0> + s|1>) / sqrt((2^n - s)^2 + s^2). Postselection succeeds with
probability ((2^n - s)^2 + s^2) / 2^(2n), which is never below 1/2.

Amplitudes are stored ancilla-fastest (index = 2*x + ancilla_bit), so the
oracle is one contiguous pair swap per marked assignment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bloch import EncodedState, encode_state
from .errors import ResourceLimitError
from .sat import CAP_ENV_VAR, CnfFormula, count_solutions, resolve_cap, truth_table

DEFAULT_CIRCUIT_CAP = 20     # 2^21 complex amplitudes ~ 32 MB
_INV_SQRT2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class PostselectionResult:
    """Outcome of the exact-projection postselection."""

    s: int
    n: int
    success_probability: float
    ancilla_state: np.ndarray
    encoded: EncodedState


def postselection_probability(s: int, n: int) -> float:
    """((2^n - s)^2 + s^2) / 2^(2n); minimized at s = 2^(n-1) where it is 1/2."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not (0 <= s <= 2**n):
        raise ValueError(f"s must be in 0..2^{n}, got {s}")
    return float((2**n - s) ** 2 + s**2) / float(2 ** (2 * n))


def _check_circuit_cap(n: int, cap: int | None) -> int:
    limit = resolve_cap(cap, DEFAULT_CIRCUIT_CAP)
    if n > limit:
        raise ResourceLimitError(
            f"n={n} exceeds the statevector cap {limit} (override with {CAP_ENV_VAR})"
        )
    return limit


def _hadamard_on_bit(state: np.ndarray, bit: int, total_bits: int) -> None:
    """In-place butterfly on one index bit (bit 0 is the fastest-varying)."""
    view = state.reshape(1 << (total_bits - bit - 1), 2, 1 << bit)
    upper = view[:, 0, :].copy()
    lower = view[:, 1, :]
    view[:, 0, :] = (upper + lower) * _INV_SQRT2
    view[:, 1, :] = (upper - lower) * _INV_SQRT2


def _apply_oracle(state: np.ndarray, mask: np.ndarray) -> None:
    """|x>|y> -> |x>|y XOR f(x)>: swap the ancilla pair of every marked x."""
    pairs = state.reshape(-1, 2)
    marked = np.nonzero(mask)[0]
    pairs[marked] = pairs[marked][:, ::-1]


def run_encoding_circuit(formula: CnfFormula, cap: int | None = None) -> PostselectionResult:
    """Simulate the circuit and project the first register onto all-zeros.

    The returned ancilla state is normalized; it must coincide with the
    analytic count state for the formula's true solution count.
    """
    n = formula.n
    limit = _check_circuit_cap(n, cap)
    mask = truth_table(formula, cap=limit)
    state = np.zeros(1 << (n + 1), dtype=complex)
    state[0] = 1.0
    for bit in range(1, n + 1):
        _hadamard_on_bit(state, bit, n + 1)
    _apply_oracle(state, mask)
    for bit in range(1, n + 1):
        _hadamard_on_bit(state, bit, n + 1)
    pair = state.reshape(-1, 2)[0].copy()
    probability = float(np.abs(pair[0]) ** 2 + np.abs(pair[1]) ** 2)
    ancilla = pair / math.sqrt(probability)
    s = int(np.count_nonzero(mask))
    return PostselectionResult(
        s=s,
        n=n,
        success_probability=probability,
        ancilla_state=ancilla,
        encoded=encode_state(s, n),
    )


def sample_preparation(formula: CnfFormula, seed: int = 0,
                       cap: int | None = None) -> tuple[EncodedState, int]:
    """Repeat preparation until postselection succeeds; returns (state, attempts).

    Success is Bernoulli-sampled at the exact postselection probability, so
    attempts is geometric with mean at most 2. Deterministic for a fixed seed.
    """
    n = formula.n
    limit = _check_circuit_cap(n, cap)
    s = count_solutions(formula, cap=max(limit, n))
    p = postselection_probability(s, n)
    rng = np.random.default_rng(seed)
    attempts = 1
    while rng.random() >= p:
        attempts += 1
    return encode_state(s, n), attempts
