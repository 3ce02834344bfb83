import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_count_reference, random_mixed_formula
from nlq.errors import DimacsParseError, ResourceLimitError
from nlq.sat import (
    CAP_ENV_VAR,
    CnfFormula,
    count_solutions,
    emit_dimacs,
    evaluate,
    generate_promise_instance,
    generate_random_3cnf,
    parse_dimacs,
    resolve_cap,
    truth_table,
)


# --- parsing ---

def test_parse_minimal():
    f = parse_dimacs("p cnf 2 1\n1 2 0")
    assert f.n == 2 and f.clauses == ((1, 2),)


def test_parse_two_clauses():
    f = parse_dimacs("p cnf 3 2\n1 -2 3 0\n-1 2 -3 0")
    assert f.m == 2
    assert f.uniform_width == 3
    assert f.clauses == ((1, -2, 3), (-1, 2, -3))


def test_parse_comments_and_whitespace():
    f = parse_dimacs("c header comment\n\np cnf 2 2\n  1   2 0\nc middle\n-1\n-2 0\n")
    assert f.clauses == ((1, 2), (-1, -2))


def test_parse_errors_carry_line_numbers():
    with pytest.raises(DimacsParseError) as err:
        parse_dimacs("p cnf 2 1\n1 3 0")
    assert "line 2" in str(err.value) and err.value.line == 2
    with pytest.raises(DimacsParseError):
        parse_dimacs("p cnf 2 1\n1 2")          # missing terminator
    with pytest.raises(DimacsParseError):
        parse_dimacs("p cnf 2 2\n1 2 0")        # clause count mismatch
    with pytest.raises(DimacsParseError):
        parse_dimacs("1 2 0")                   # no header
    with pytest.raises(DimacsParseError):
        parse_dimacs("p dnf 2 1\n1 2 0")        # wrong format tag
    with pytest.raises(DimacsParseError):
        parse_dimacs("p cnf 2 1\n0")            # empty clause
    with pytest.raises(DimacsParseError):
        parse_dimacs("p cnf 2 1\n1 x 0")        # bad token


def test_emit_round_trip_exact():
    text = "p cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n"
    assert emit_dimacs(parse_dimacs(text)) == text


@settings(max_examples=100)
@given(st.data())
def test_parse_emit_round_trip(data):
    n = data.draw(st.integers(1, 6))
    m = data.draw(st.integers(0, 8))
    clauses = []
    for _ in range(m):
        width = data.draw(st.integers(1, min(4, n)))
        variables = data.draw(
            st.lists(st.integers(1, n), min_size=width, max_size=width, unique=True)
        )
        signs = data.draw(st.lists(st.sampled_from((-1, 1)), min_size=width, max_size=width))
        clauses.append(tuple(v * s for v, s in zip(variables, signs)))
    f = CnfFormula(n=n, clauses=tuple(clauses))
    assert parse_dimacs(emit_dimacs(f)) == f


def test_formula_validation():
    with pytest.raises(ValueError):
        CnfFormula(n=2, clauses=((3,),))
    with pytest.raises(ValueError):
        CnfFormula(n=2, clauses=((),))
    with pytest.raises(ValueError):
        CnfFormula(n=0, clauses=())


# --- evaluation and counting ---

def test_evaluate_basics():
    f = parse_dimacs("p cnf 2 1\n1 2 0")
    assert evaluate(f, [0, 0]) == 0
    assert evaluate(f, [1, 0]) == 1
    assert evaluate(f, [0, 1]) == 1
    with pytest.raises(ValueError):
        evaluate(f, [0, 0, 0])


def test_evaluate_empty_formula():
    f = CnfFormula(n=3, clauses=())
    for bits in ([0, 0, 0], [1, 0, 1], [1, 1, 1]):
        assert evaluate(f, bits) == 1
    assert count_solutions(f) == 8


def test_count_examples():
    assert count_solutions(parse_dimacs("p cnf 2 1\n1 2 0")) == 3
    assert count_solutions(parse_dimacs("p cnf 1 2\n1 0\n-1 0")) == 0
    assert count_solutions(parse_dimacs("p cnf 1 1\n1 -1 0")) == 2


def test_count_matches_evaluate_sum(rng):
    for _ in range(10):
        f = random_mixed_formula(rng, n=int(rng.integers(2, 9)))
        direct = sum(
            evaluate(f, [(x >> j) & 1 for j in range(f.n)]) for x in range(2**f.n)
        )
        assert count_solutions(f) == direct


def test_count_matches_independent_reference(rng):
    for _ in range(15):
        f = random_mixed_formula(rng, n=int(rng.integers(2, 11)))
        assert count_solutions(f) == brute_count_reference(f)


def test_truth_table_agrees_with_evaluate(rng):
    f = random_mixed_formula(rng, n=6)
    table = truth_table(f)
    assert table.shape == (64,)
    for x in range(64):
        assert int(table[x]) == evaluate(f, [(x >> j) & 1 for j in range(6)])


def test_chunked_counting_crosses_chunk_boundary():
    # n = 21 > the 2^20 chunk; a single unit clause fixes exactly half
    f = CnfFormula(n=21, clauses=((1,),))
    assert count_solutions(f) == 2**20


def test_cap_enforcement(monkeypatch):
    f = CnfFormula(n=25, clauses=((1,),))
    with pytest.raises(ResourceLimitError):
        count_solutions(f)
    with pytest.raises(ResourceLimitError):
        truth_table(f)
    assert count_solutions(f, cap=25) == 2**24
    monkeypatch.setenv(CAP_ENV_VAR, "25")
    assert resolve_cap(None, 24) == 25
    assert count_solutions(f) == 2**24
    monkeypatch.setenv(CAP_ENV_VAR, "10")
    with pytest.raises(ResourceLimitError):
        count_solutions(CnfFormula(n=11, clauses=((1,),)))
    assert resolve_cap(12, 24) == 12


# --- generators ---

def test_random_3cnf_structure_and_determinism():
    f1 = generate_random_3cnf(5, 10, seed=1)
    f2 = generate_random_3cnf(5, 10, seed=1)
    assert f1 == f2
    assert f1.m == 10 and f1.uniform_width == 3
    for clause in f1.clauses:
        assert len({abs(lit) for lit in clause}) == 3
    assert generate_random_3cnf(5, 10, seed=2) != f1
    with pytest.raises(ValueError):
        generate_random_3cnf(2, 5, seed=0)


def test_random_3cnf_count_is_reproducible():
    f = generate_random_3cnf(10, 42, seed=7)
    assert count_solutions(f) == count_solutions(generate_random_3cnf(10, 42, seed=7))


def test_promise_instances():
    for n in (2, 4, 6, 9):
        for seed in range(4):
            one = generate_promise_instance(n, 1, seed=seed)
            assert count_solutions(one) == 1
            zero = generate_promise_instance(n, 0, seed=seed)
            assert count_solutions(zero) == 0
    assert generate_promise_instance(5, 1, seed=3) == generate_promise_instance(5, 1, seed=3)
    with pytest.raises(ValueError):
        generate_promise_instance(1, 1, seed=0)
    with pytest.raises(ValueError):
        generate_promise_instance(5, 2, seed=0)
