"""CNF formulas: DIMACS I/O, evaluation, brute-force counting, instance generators.

The exact solution count from truth-table enumeration is the classical
oracle every solver in this package is checked against. Assignments are
packed into integers with bit j (least significant) holding variable j+1.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import DimacsParseError, GenerationError, ResourceLimitError

DEFAULT_BRUTE_FORCE_CAP = 24     # 16.7M evaluations; keeps the oracle to seconds
CAP_ENV_VAR = "NLQ_MAX_N"
_CHUNK_BITS = 20


def resolve_cap(explicit: int | None, default: int) -> int:
    """Explicit argument wins, then the NLQ_MAX_N environment override, then the default."""
    if explicit is not None:
        return explicit
    env = os.environ.get(CAP_ENV_VAR)
    return int(env) if env else default


@dataclass(frozen=True)
class CnfFormula:
    """n variables and a conjunction of clauses of signed DIMACS literals."""

    n: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"variable count must be >= 1, got {self.n}")
        for clause in self.clauses:
            if len(clause) == 0:
                raise ValueError("empty clause is not allowed")
            for lit in clause:
                if lit == 0 or not (1 <= abs(lit) <= self.n):
                    raise ValueError(f"literal {lit} out of range for n={self.n}")

    @property
    def m(self) -> int:
        return len(self.clauses)

    @property
    def uniform_width(self) -> int | None:
        """The common clause width (3 for 3SAT instances), or None when mixed."""
        widths = {len(c) for c in self.clauses}
        return widths.pop() if len(widths) == 1 else None


def parse_dimacs(text: str) -> CnfFormula:
    """Strict DIMACS CNF reader: one 'p cnf n m' header, 0-terminated clauses.

    Whitespace and line breaks inside clauses are tolerated; structural
    problems (bad header, out-of-range literal, missing terminator, clause
    count mismatch) raise DimacsParseError with the offending line number.
    """
    n = m = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        stripped = raw.strip()
        if not stripped or stripped.startswith("c"):
            continue
        if stripped.startswith("p"):
            if n is not None:
                raise DimacsParseError("duplicate header", lineno)
            parts = stripped.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsParseError(f"malformed header {stripped!r}", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsParseError(f"malformed header {stripped!r}", lineno) from None
            if n < 1 or m < 0:
                raise DimacsParseError(f"header declares n={n}, m={m}", lineno)
            continue
        if n is None:
            raise DimacsParseError("clause data before 'p cnf' header", lineno)
        for token in stripped.split():
            try:
                lit = int(token)
            except ValueError:
                raise DimacsParseError(f"unexpected token {token!r}", lineno) from None
            if lit == 0:
                if not current:
                    raise DimacsParseError("empty clause", lineno)
                clauses.append(tuple(current))
                current = []
            else:
                if not (1 <= abs(lit) <= n):
                    raise DimacsParseError(f"literal {lit} exceeds n={n}", lineno)
                current.append(lit)
    if n is None:
        raise DimacsParseError("missing 'p cnf' header", last_line or 1)
    if current:
        raise DimacsParseError("clause missing its 0 terminator", last_line)
    if len(clauses) != m:
        raise DimacsParseError(
            f"header declares {m} clauses but {len(clauses)} were read", last_line
        )
    return CnfFormula(n=n, clauses=tuple(clauses))


def emit_dimacs(formula: CnfFormula) -> str:
    """Bit-exact writer: header, one clause per line, '0' terminators, LF endings."""
    lines = [f"p cnf {formula.n} {formula.m}"]
    for clause in formula.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines) + "\n"


def evaluate(formula: CnfFormula, assignment) -> int:
    """1 iff every clause contains a satisfied literal; assignment is n bits."""
    bits = list(assignment)
    if len(bits) != formula.n:
        raise ValueError(f"assignment length {len(bits)} != n={formula.n}")
    for clause in formula.clauses:
        for lit in clause:
            value = bits[abs(lit) - 1]
            if (value and lit > 0) or (not value and lit < 0):
                break
        else:
            return 0
    return 1


def _mask_chunk(formula: CnfFormula, lo: int, hi: int) -> np.ndarray:
    xs = np.arange(lo, hi, dtype=np.uint64)
    sat = np.ones(hi - lo, dtype=bool)
    for clause in formula.clauses:
        clause_sat = np.zeros(hi - lo, dtype=bool)
        for lit in clause:
            bit = (xs >> np.uint64(abs(lit) - 1)) & np.uint64(1)
            clause_sat |= (bit == 1) if lit > 0 else (bit == 0)
        sat &= clause_sat
    return sat


def _check_cap(n: int, cap: int | None, default: int) -> None:
    limit = resolve_cap(cap, default)
    if n > limit:
        raise ResourceLimitError(
            f"n={n} exceeds the enumeration cap {limit} (override with {CAP_ENV_VAR})"
        )


def truth_table(formula: CnfFormula, cap: int | None = None) -> np.ndarray:
    """Boolean satisfaction array over all 2^n assignments, indexed as packed bits."""
    _check_cap(formula.n, cap, DEFAULT_BRUTE_FORCE_CAP)
    return _mask_chunk(formula, 0, 1 << formula.n)


def count_solutions(formula: CnfFormula, cap: int | None = None) -> int:
    """Exact satisfying-assignment count by (chunked) truth-table enumeration."""
    _check_cap(formula.n, cap, DEFAULT_BRUTE_FORCE_CAP)
    total = 1 << formula.n
    chunk = 1 << _CHUNK_BITS
    count = 0
    for lo in range(0, total, chunk):
        count += int(np.count_nonzero(_mask_chunk(formula, lo, min(lo + chunk, total))))
    return count


def generate_random_3cnf(n: int, m: int, seed: int) -> CnfFormula:
    """m clauses of 3 distinct variables, uniform polarities; deterministic per seed."""
    if n < 3:
        raise ValueError(f"n must be >= 3 for width-3 clauses, got {n}")
    rng = np.random.default_rng(seed)
    clauses = []
    for _ in range(m):
        variables = rng.choice(n, size=3, replace=False) + 1
        signs = rng.integers(0, 2, size=3) * 2 - 1
        clauses.append(tuple(int(v * s) for v, s in zip(variables, signs)))
    return CnfFormula(n=n, clauses=tuple(clauses))


def generate_promise_instance(n: int, s_target: int, seed: int) -> CnfFormula:
    """A formula with exactly s_target in {0, 1} satisfying assignments.

    Plants an assignment and pins it with an implication chain; width-3
    clauses the plant satisfies are mixed in for variety. The resulting
    count is verified against the brute-force oracle, never assumed.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if s_target not in (0, 1):
        raise ValueError(f"s_target must be 0 or 1, got {s_target}")
    rng = np.random.default_rng(seed)
    for _ in range(8):
        planted = rng.integers(0, 2, size=n)
        lits = [i + 1 if planted[i] else -(i + 1) for i in range(n)]
        clauses: list[tuple[int, ...]] = [(lits[0],)]
        clauses += [(-lits[i], lits[i + 1]) for i in range(n - 1)]
        if n >= 3:
            for _ in range(n):
                variables = rng.choice(n, size=3, replace=False)
                signs = rng.integers(0, 2, size=3) * 2 - 1
                clause = [int((v + 1) * s) for v, s in zip(variables, signs)]
                anchor = int(rng.integers(0, 3))
                clause[anchor] = lits[variables[anchor]]
                clauses.append(tuple(clause))
        if s_target == 0:
            clauses.append((-lits[0],))
        order = rng.permutation(len(clauses))
        formula = CnfFormula(n=n, clauses=tuple(clauses[i] for i in order))
        if count_solutions(formula) == s_target:
            return formula
    raise GenerationError(
        f"could not construct an instance with s={s_target} after bounded retries"
    )
