from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from glrep.exact import (
    ExactMatrix, HalfInt, Inconsistent, exact_exponent, nullspace, parse_scalar, rank,
    reduced_row_echelon, scalar_str, solve_linear,
)


def naive_rank(rows):
    """Textbook Gaussian elimination over Fraction; the reference for rank."""
    m = [[Fraction(x) for x in r] for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


small = st.integers(-4, 4)
fractions = st.builds(lambda a, b: mpq(a, b), st.integers(-6, 6), st.integers(1, 4))


@st.composite
def matrices(draw, max_dim=5):
    n = draw(st.integers(1, max_dim))
    m = draw(st.integers(1, max_dim))
    # low-rank products show up more often than random full-rank ones
    k = draw(st.integers(1, min(n, m)))
    a = [[draw(small) for _ in range(k)] for _ in range(n)]
    b = [[draw(fractions) for _ in range(m)] for _ in range(k)]
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def test_parse_scalar():
    assert parse_scalar("3/7") == mpq(3, 7)
    assert parse_scalar("-3/2") == mpq(-3, 2)
    assert parse_scalar("4/2") == 2
    assert parse_scalar(" 5 ") == 5
    for bad in ("1/0", "abc", "1.5", ""):
        with pytest.raises(ValueError):
            parse_scalar(bad)


def test_scalar_str_round_trip():
    for x in (mpq(0), mpq(-48, 35), mpq(7), mpq(1, 2)):
        assert parse_scalar(scalar_str(x)) == x
    assert scalar_str(mpq(6, 4)) == "3/2"
    assert scalar_str(mpq(-4, 2)) == "-2"


def test_halfint():
    h = HalfInt.of(mpq(3, 2))
    assert h.doubled == 3 and not h.is_integer()
    assert h + HalfInt.of(mpq(1, 2)) == 2
    assert HalfInt.of(-1) < h
    with pytest.raises(ValueError):
        HalfInt.of(mpq(1, 3))
    with pytest.raises(ValueError):
        h.to_int()


def test_exact_exponent_rejects_fractions():
    assert exact_exponent(mpq(4, 2)) == 2
    with pytest.raises(ValueError):
        exact_exponent(mpq(1, 2))


def test_matrix_arithmetic():
    a = ExactMatrix.from_dense([[1, 2], [0, mpq(1, 2)]])
    b = ExactMatrix.from_dense([[0, 1], [1, 0]])
    assert (a @ b).to_dense() == [[2, 1], [mpq(1, 2), 0]]
    assert (a - a).is_zero()
    assert ExactMatrix.identity(3).scale(mpq(2, 3)).scalar_value() == mpq(2, 3)
    assert a.scalar_value() is None
    assert a.transpose().to_dense() == [[1, 0], [2, mpq(1, 2)]]


def test_solve_linear_inconsistent():
    a = ExactMatrix.from_dense([[1, 1], [2, 2]])
    with pytest.raises(Inconsistent):
        solve_linear(a, {0: 1, 1: 3})
    x = solve_linear(a, {0: 1, 1: 2})
    assert a.apply(x) == {0: 1, 1: 2}


@given(matrices())
def test_rank_matches_reference(rows):
    assert rank(ExactMatrix.from_dense(rows)) == naive_rank(rows)


@given(matrices())
def test_rank_of_transpose(rows):
    m = ExactMatrix.from_dense(rows)
    assert rank(m) == rank(m.transpose())


@given(matrices())
def test_nullspace_is_kernel_of_right_size(rows):
    m = ExactMatrix.from_dense(rows)
    ker = nullspace(m)
    assert len(ker) == m.ncols - rank(m)
    for v in ker:
        assert m.apply(v) == {}


@given(matrices(), st.lists(fractions, min_size=5, max_size=5))
def test_solve_recovers_consistent_rhs(rows, x):
    m = ExactMatrix.from_dense(rows)
    x = {j: x[j] for j in range(m.ncols) if x[j]}
    b = m.apply(x)
    sol = solve_linear(m, b)
    assert m.apply(sol) == b


@given(matrices())
def test_rref_is_idempotent(rows):
    r = reduced_row_echelon(ExactMatrix.from_dense(rows))
    assert reduced_row_echelon(r) == r
