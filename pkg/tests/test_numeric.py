from fractions import Fraction
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings, strategies as st

from efcheck import instances as inst
from efcheck.numeric import (Inconsistent, Matrix, Parametric, Unique, as_rational, dot,
                             null_space, rank, solve_linear_system)


def leibniz_det(M):
    """Determinant by permutation expansion; independent of elimination."""
    n = len(M)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1 if inversions % 2 else 1)
        for i, p in enumerate(perm):
            term *= M[i][p]
        total += term
    return total


def minor_rank(M):
    """Largest k with a nonzero k x k minor."""
    rows = len(M)
    cols = len(M[0]) if M else 0
    for k in range(min(rows, cols), 0, -1):
        for R in combinations(range(rows), k):
            for C in combinations(range(cols), k):
                if leibniz_det([[M[r][c] for c in C] for r in R]):
                    return k
    return 0


small_ints = st.integers(-4, 4).map(Fraction)


@st.composite
def matrices(draw, max_rows=3, max_cols=4):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(small_ints) for _ in range(c)] for _ in range(r)]


def test_identity_system_is_unique():
    assert solve_linear_system(Matrix.identity(2), [5, 7]) == Unique((Fraction(5), Fraction(7)))


def test_contradictory_rows_are_inconsistent():
    assert isinstance(solve_linear_system([[1, 1], [1, 1]], [2, 3]), Inconsistent)


def test_underdetermined_system_is_parametric():
    sol = solve_linear_system([[1, 1, 0], [1, -1, 0]], [5, 1])
    assert sol == Parametric((Fraction(3), Fraction(2), Fraction(0)), ((Fraction(0), Fraction(0), Fraction(1)),))


def test_dimension_mismatch_raises():
    with pytest.raises(ValueError):
        solve_linear_system([[1, 0], [0, 1]], [1, 2, 3])


@pytest.mark.parametrize("A, expected", [
    (Matrix.identity(3), 3),
    (Matrix.zeros(2, 2), 0),
])
def test_rank_trivial(A, expected):
    assert rank(A) == expected


def test_rank_of_map_a_matches_minor_oracle():
    A = inst.map_a()
    rows = [list(r) for r in A.to_rows()]
    assert leibniz_det([r[:3] for r in rows]) == Fraction(3, 2)
    assert minor_rank(rows) == 3
    assert rank(A) == 3


@given(matrices())
def test_rank_equals_transpose_rank_and_minor_rank(M):
    A = Matrix.from_rows(M)
    assert rank(A) == rank(A.T) == minor_rank(M)


@given(matrices(), st.lists(small_ints, min_size=4, max_size=4))
def test_consistent_systems_reproduce_rhs_exactly(M, x0):
    A = Matrix.from_rows(M)
    x0 = tuple(x0[:A.cols])
    b = A.apply(x0)
    sol = solve_linear_system(A, b)
    assert not isinstance(sol, Inconsistent)
    x = sol.point if isinstance(sol, Unique) else sol.particular
    assert A.apply(x) == b
    if isinstance(sol, Parametric):
        for v in sol.basis:
            assert A.apply(v) == (Fraction(0),) * A.rows
        assert len(sol.basis) == A.cols - rank(A)


@given(small_ints, small_ints, small_ints)
def test_rational_arithmetic_laws(a, b, c):
    a, b, c = a / 3, b / 7, c / 5
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


def test_as_rational_parsing():
    assert as_rational("3") == 3
    assert as_rational("-6/4") == Fraction(-3, 2)
    assert as_rational(2.5) == Fraction(5, 2)
    assert as_rational(0.1) == Fraction(1, 10)
    with pytest.raises(ValueError):
        as_rational("three")
    with pytest.raises(TypeError):
        as_rational(True)


def test_matrix_products():
    A = inst.map_a()
    assert A.apply(inst.U_BAR_VERTEX) == inst.X_POINT
    assert (A @ Matrix.identity(5)) == A
    assert A.T.shape == (5, 3)
    with pytest.raises(ValueError):
        A.apply((1, 2))
    with pytest.raises(ValueError):
        Matrix(2, 2, (Fraction(1),))


def test_null_space_of_full_rank_square_is_empty():
    assert null_space(Matrix.identity(3)) == []
    assert dot((Fraction(1), Fraction(2)), (Fraction(3), Fraction(4))) == 11
