from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilcone.errors import ShapeError, SingularMatrixError
from nilcone.linalg import (Matrix, Polynomial, corner_submatrix, det, mat_mul,
                            mat_pow, poly_eval_matrix, rational,
                            solve_homogeneous, solve_linear)

N3 = Matrix.from_rows([[0, 0, 0], [1, 0, 0], [0, 2, 0]])


def small_matrix(n):
    entry = st.integers(-6, 6).map(Fraction)
    return st.lists(st.lists(entry, min_size=n, max_size=n), min_size=n, max_size=n).map(Matrix.from_rows)


def test_rational_coercion():
    assert rational("3/4") == Fraction(3, 4)
    assert rational(7) == Fraction(7)
    with pytest.raises(TypeError):
        rational(0.5)


def test_mat_mul_identity_and_zero():
    a = Matrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    assert mat_mul(Matrix.identity(3), a) == a
    assert mat_mul(a, Matrix.zeros(3, 3)) == Matrix.zeros(3, 3)


def test_mat_mul_nilpotent_square():
    j = Matrix.from_rows([[0, 0], [1, 0]])
    assert mat_mul(j, j) == Matrix.zeros(2, 2)


def test_mat_mul_shape_error():
    with pytest.raises(ShapeError):
        mat_mul(Matrix.zeros(2, 3), Matrix.zeros(2, 3))


def test_mat_pow_basics():
    assert mat_pow(N3, 0) == Matrix.identity(3)
    assert mat_pow(N3, 3) == Matrix.zeros(3, 3)
    squared = mat_pow(N3, 2)
    assert squared[2, 0] == 2
    assert sum(1 for row in squared.entries for x in row if x != 0) == 1


def test_mat_pow_strictly_lower_is_nilpotent():
    low = Matrix.from_rows([[0, 0, 0, 0], [1, 0, 0, 0], [2, 3, 0, 0], [4, 5, 6, 0]])
    assert mat_pow(low, 4) == Matrix.zeros(4, 4)


def test_det_frozen_values():
    assert det(Matrix.identity(5)) == 1
    assert det(Matrix.from_rows([[1, 2], [3, 4]])) == -2
    with_zero_row = Matrix.from_rows([[1, 2], [0, 0]])
    assert det(with_zero_row) == 0


def test_det_empty_is_one():
    assert det(Matrix.zeros(0, 0)) == 1


def test_det_rational_entries():
    m = Matrix.from_rows([[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 5), Fraction(1, 7)]])
    assert det(m) == Fraction(1, 14) - Fraction(1, 15)


def test_corner_submatrix():
    n = Matrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    assert corner_submatrix(n, 3, 3) == n
    assert corner_submatrix(n, 0, 2).rows == 0
    assert corner_submatrix(n, 1, 1) == Matrix.from_rows([[7]])
    with pytest.raises(ShapeError):
        corner_submatrix(n, 4, 1)


def test_corner_is_strict_restriction():
    n = Matrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    sub = corner_submatrix(n, 2, 3)
    for i in range(2):
        for j in range(3):
            assert sub[i, j] == n[3 - 2 + i, j]


def test_poly_eval_matrix():
    assert poly_eval_matrix(Polynomial.x_power(1), N3) == N3
    assert poly_eval_matrix(Polynomial.one(), N3) == Matrix.identity(3)
    sq = poly_eval_matrix(Polynomial.x_power(2), N3)
    assert sq[2, 0] == 2


def test_polynomial_normalisation():
    p = Polynomial((1, 0, 0))
    assert p.degree == 0
    assert Polynomial(()).is_zero()
    assert str(Polynomial((0, 1))) == "x"


def test_solve_homogeneous_frozen():
    assert solve_homogeneous(Matrix.identity(3)) == []
    basis = solve_homogeneous(Matrix.zeros(2, 2))
    assert basis == [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]
    assert solve_homogeneous(Matrix.from_rows([[1, 1]])) == [(Fraction(1), Fraction(-1))]


def test_solve_linear():
    a = Matrix.from_rows([[1, 1], [0, 1]])
    particular, basis = solve_linear(a, [Fraction(3), Fraction(1)])
    assert particular == [Fraction(2), Fraction(1)]
    assert basis == []
    none, _ = solve_linear(Matrix.from_rows([[1, 1], [1, 1]]), [Fraction(0), Fraction(1)])
    assert none is None


def test_inverse_roundtrip_and_singular():
    m = Matrix.from_rows([[1, 2], [3, 5]])
    assert m @ m.inverse() == Matrix.identity(2)
    with pytest.raises(SingularMatrixError):
        Matrix.from_rows([[1, 1], [1, 1]]).inverse()


@settings(max_examples=40, deadline=None)
@given(small_matrix(4), small_matrix(4))
def test_det_is_multiplicative(a, b):
    assert det(a @ b) == det(a) * det(b)


@settings(max_examples=30, deadline=None)
@given(small_matrix(3), st.integers(0, 3), st.integers(0, 3))
def test_pow_is_additive(a, j, k):
    assert mat_pow(a, j + k) == mat_pow(a, j) @ mat_pow(a, k)


@settings(max_examples=30, deadline=None)
@given(small_matrix(4))
def test_nullspace_vectors_are_solutions(a):
    for vec in solve_homogeneous(a):
        col = Matrix.from_rows([[v] for v in vec], cols=1)
        assert (a @ col).is_zero()
