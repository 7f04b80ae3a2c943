import random
from fractions import Fraction

import pytest

from symbpow import linalg
from symbpow.errors import DimensionMismatchError, EngineDisagreementError
from symbpow.linalg import (
    IntSpan,
    RatMatrix,
    in_span,
    kernel_basis,
    kernel_of_int_rows,
    modular_rank_pivots,
    naive_rank_pivots,
    rref,
    rref_fraction_free,
    span_of,
    validate_modular,
)

from .oracles import oracle_in_span, oracle_rank, oracle_rref


def test_rref_identity():
    res = rref(RatMatrix.identity(3))
    assert res.rank == 3
    assert res.pivots == (0, 1, 2)
    assert res.matrix == RatMatrix.identity(3)


def test_rref_single_row():
    res = rref([[1, 1, 1]])
    assert res.rank == 1
    assert res.pivots == (0,)


def test_rref_matches_naive_oracle_on_random_matrices():
    rng = random.Random(11)
    for _ in range(100):
        rows = [[rng.randint(-9, 9) for _ in range(6)] for _ in range(6)]
        res = rref(rows)
        orows, opiv = oracle_rref(rows)
        assert res.rank == len(opiv)
        assert list(res.pivots) == opiv


def test_fraction_free_equals_naive_rref_on_random_matrices():
    rng = random.Random(12)
    for _ in range(100):
        rows = [[rng.randint(-30, 30) for _ in range(8)] for _ in range(8)]
        a = rref(rows)
        b = rref_fraction_free(rows)
        assert a.pivots == b.pivots
        assert a.matrix == b.matrix  # canonical RREF is unique per row space


def test_fraction_free_zero_matrix():
    res = rref_fraction_free([[0, 0, 0], [0, 0, 0]])
    assert res.rank == 0
    assert res.pivots == ()


def test_fraction_free_rank_deficient():
    res = rref_fraction_free([[2, 4], [1, 2]])
    assert res.rank == 1


def test_fraction_free_accepts_rational_rows():
    rows = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), Fraction(1, 1)]]
    assert rref_fraction_free(rows).matrix == rref(rows).matrix


def test_kernel_identity_empty():
    assert kernel_basis(RatMatrix.identity(3)) == []


def test_kernel_single_row():
    basis = kernel_basis([[1, 1, 1]])
    assert len(basis) == 2
    for v in basis:
        assert sum(v) == 0  # annihilated by the row (1, 1, 1)


def test_kernel_rank_nullity_and_exact_residuals():
    rng = random.Random(13)
    for _ in range(50):
        nr, nc = rng.randint(1, 7), rng.randint(1, 7)
        rows = [[rng.randint(-9, 9) for _ in range(nc)] for _ in range(nr)]
        basis = kernel_basis(rows)
        rank = rref(rows).rank
        assert rank + len(basis) == nc
        for v in basis:
            for row in rows:
                assert sum(a * b for a, b in zip(row, v)) == 0


def test_kernel_engines_agree():
    rng = random.Random(14)
    for _ in range(25):
        rows = [[rng.randint(-9, 9) for _ in range(5)] for _ in range(4)]
        assert kernel_basis(rows, engine="naive") == kernel_basis(rows)


def test_empty_matrix_conventions():
    m = RatMatrix([], cols=4)
    assert rref(m).rank == 0
    basis = kernel_basis(m)
    assert len(basis) == 4  # kernel of nothing is the whole column space
    assert basis[0][0] == 1


def test_in_span_trivial_cases():
    assert in_span([0, 0, 0], [[1, 2, 3]])
    assert in_span([0, 0], [])
    assert not in_span([1, 0], [[0, 1]])
    assert in_span([2, 4, 6], [[1, 2, 3]])


def test_in_span_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        in_span([1, 0], [[1, 0, 0]])


def test_in_span_scaling_invariance():
    rng = random.Random(15)
    for _ in range(50):
        nc = rng.randint(2, 5)
        vectors = [[rng.randint(-5, 5) for _ in range(nc)] for _ in range(rng.randint(1, 4))]
        v = [rng.randint(-5, 5) for _ in range(nc)]
        base = in_span(v, vectors)
        s = Fraction(rng.randint(1, 7), rng.randint(1, 7))
        assert in_span([s * x for x in v], vectors) == base
        scaled = [[s * x for x in w] for w in vectors]
        assert in_span(v, scaled) == base


def test_in_span_matches_oracle():
    rng = random.Random(16)
    for _ in range(60):
        nc = rng.randint(2, 6)
        vectors = [[rng.randint(-4, 4) for _ in range(nc)] for _ in range(rng.randint(1, 5))]
        v = [rng.randint(-4, 4) for _ in range(nc)]
        assert in_span(v, vectors) == oracle_in_span(v, vectors)


def test_intspan_rank_pivots_match_oracle():
    rng = random.Random(17)
    for _ in range(100):
        nr, nc = rng.randint(1, 7), rng.randint(1, 7)
        rows = [[rng.randint(-9, 9) for _ in range(nc)] for _ in range(nr)]
        s = span_of(rows, nc)
        _, opiv = oracle_rref(rows)
        assert s.rank == len(opiv)
        assert list(s.pivots()) == opiv


def test_intspan_insert_reports_growth():
    s = IntSpan(3)
    assert s.insert([1, 2, 3])
    assert not s.insert([2, 4, 6])
    assert s.insert([0, 1, 1])
    assert s.rank == 2
    assert s.contains([1, 3, 4])
    assert not s.contains([0, 0, 1])


def test_naive_rank_pivots_agrees():
    rng = random.Random(18)
    for _ in range(50):
        nr, nc = rng.randint(1, 8), rng.randint(1, 8)
        rows = [[rng.randint(-9, 9) for _ in range(nc)] for _ in range(nr)]
        rank, piv = naive_rank_pivots(rows, nc)
        res = rref(rows)
        assert (rank, piv) == (res.rank, res.pivots)


def test_modular_rank_agrees_on_random_matrices():
    rng = random.Random(19)
    for _ in range(25):
        nr, nc = rng.randint(1, 8), rng.randint(1, 8)
        rows = [[rng.randint(-50, 50) for _ in range(nc)] for _ in range(nr)]
        res = rref(rows)
        for p in linalg.MODULAR_PRIMES:
            rank, piv = modular_rank_pivots(rows, nc, p)
            assert rank == res.rank and piv == res.pivots
        validate_modular(rows, nc, res.rank, res.pivots)


def test_validate_modular_flags_wrong_rank():
    rows = [[1, 0], [0, 1]]
    with pytest.raises(EngineDisagreementError):
        validate_modular(rows, 2, 1, (0,))


def test_kernel_of_int_rows_canonical_scaling():
    basis = kernel_of_int_rows([[2, 4, 6]], 3)
    for v in basis:
        lead = next(x for x in v if x)
        assert lead > 0  # primitive with positive leading entry


def test_ratmatrix_immutable_and_validated():
    m = RatMatrix([[1, 2], [3, 4]])
    with pytest.raises(AttributeError):
        m.rows = 5
    with pytest.raises(DimensionMismatchError):
        RatMatrix([[1, 2], [3]])
