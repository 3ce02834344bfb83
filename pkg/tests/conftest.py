"""Shared test helpers: independent oracles and instance generators."""

import itertools

import numpy as np
import pytest

from nlq.sat import CnfFormula


def brute_count_reference(formula: CnfFormula) -> int:
    """Clause-set counting oracle, independent of the package's vectorized path."""
    count = 0
    for bits in itertools.product((0, 1), repeat=formula.n):
        assign = {i + 1: bool(bits[i]) for i in range(formula.n)}
        ok = True
        for clause in formula.clauses:
            if not any(assign[abs(lit)] == (lit > 0) for lit in clause):
                ok = False
                break
        count += ok
    return count


def random_mixed_formula(rng: np.random.Generator, n: int | None = None) -> CnfFormula:
    """A CNF with mixed clause widths in 1..3, n <= 12."""
    if n is None:
        n = int(rng.integers(2, 13))
    m = int(rng.integers(1, 3 * n + 1))
    clauses = []
    for _ in range(m):
        width = int(rng.integers(1, min(3, n) + 1))
        variables = rng.choice(n, size=width, replace=False) + 1
        signs = rng.integers(0, 2, size=width) * 2 - 1
        clauses.append(tuple(int(v * s) for v, s in zip(variables, signs)))
    return CnfFormula(n=n, clauses=tuple(clauses))


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
