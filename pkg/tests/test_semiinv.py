import random
from fractions import Fraction

import pytest

from nilcone.errors import ShapeError
from nilcone.groups import (Character, ParabolicShape, conjugate,
                            random_element, random_nilpotent)
from nilcone.linalg import Matrix, Polynomial
from nilcone.semiinv import (SemiInvariantDatum, WeightedInvariant,
                             block_matrix, det_k, evaluate,
                             extraction_character, f_ij, g_ij, invariants_n3,
                             random_datum, stack, verify_semiinvariance,
                             weight_of)

X = Polynomial.x_power
N3 = Matrix.from_rows([[0, 0, 0], [1, 0, 0], [0, 2, 0]])
TORIC_12 = Matrix.from_rows([[0, 0, 0], [1, 0, 0], [0, 2, 0]])


def test_datum_drops_zero_blocks():
    datum = SemiInvariantDatum((0, 2), (1, 1, 0), ((X(3), X(3), X(1)), (X(1), X(2), X(4))))
    assert datum.row_blocks == (2,)
    assert datum.col_blocks == (1, 1)
    assert [str(p) for p in datum.polys[0]] == ["x", "x^2"]


def test_datum_sum_mismatch():
    with pytest.raises(ShapeError):
        SemiInvariantDatum((2,), (1,), ((X(1),),))


def test_block_matrix_frozen_examples():
    datum = SemiInvariantDatum((1,), (1,), ((X(1),),))
    n2 = Matrix.from_rows([[0, 0], [7, 0]])
    assert block_matrix(n2, datum) == Matrix.from_rows([[7]])
    zero_grid = SemiInvariantDatum((1,), (1,), ((Polynomial.zero(),),))
    assert block_matrix(n2, zero_grid) == Matrix.zeros(1, 1)
    sq = SemiInvariantDatum((1,), (1,), ((X(2),),))
    assert block_matrix(N3, sq) == Matrix.from_rows([[2]])


def test_block_matrix_shape_error():
    with pytest.raises(ShapeError):
        block_matrix(N3, SemiInvariantDatum((4,), (4,), ((X(1),),)))


def test_eval_frozen_examples():
    f21 = SemiInvariantDatum((1,), (1,), ((X(1),),))
    assert evaluate(Matrix.from_rows([[0, 0], [7, 0]]), f21) == 7
    d1 = det_k(3, 1)
    assert d1(N3) == 2
    assert d1(N3) == N3[1, 0] * N3[2, 1] - N3[1, 1] * N3[2, 0]


def test_weight_of_frozen_examples():
    assert weight_of(SemiInvariantDatum((2,), (1, 1), ((X(1), X(2)),)), 3).coords == (-2, 1, 1)
    assert weight_of(SemiInvariantDatum((1,), (1,), ((X(1),),)), 2).coords == (-1, 1)
    full = SemiInvariantDatum((3,), (3,), ((X(1),),))
    assert weight_of(full, 3) == Character.zero(3)


def test_det_k_range_and_pattern_value():
    with pytest.raises(ShapeError):
        det_k(3, 3)
    with pytest.raises(ShapeError):
        det_k(3, 0)
    assert det_k(2, 1).datum.polys[0][0].degree == 1
    from nilcone.normalform import PatternSpec, random_pattern_matrix

    for n in (3, 4, 5):
        spec = PatternSpec.borel(n)
        for seed in range(5):
            h = random_pattern_matrix(spec, seed)
            for k in range(1, n):
                assert det_k(n, k)(h) == 1


def test_f_ij_constraints_and_degenerate_blocks():
    with pytest.raises(ShapeError):
        f_ij(3, 2, 1)
    w = f_ij(3, 3, 1)
    assert w.datum.row_blocks == (1,) and w.datum.col_blocks == (1,)
    n = Matrix.from_rows([[0, 0, 0], [0, 0, 0], [5, 0, 0]])
    assert w(n) == 5
    nondeg = f_ij(4, 4, 2)
    assert sum(nondeg.datum.row_blocks) == sum(nondeg.datum.col_blocks)
    for (n_, i, j) in [(4, 3, 1), (5, 4, 2), (5, 5, 3)]:
        wij = f_ij(n_, i, j)
        assert sum(wij.datum.row_blocks) == sum(wij.datum.col_blocks)


def test_invariants_n3_closed_forms():
    f31, f1, f2, d1 = invariants_n3()
    assert (f31(TORIC_12), f1(TORIC_12), f2(TORIC_12), d1(TORIC_12)) == (0, 2, 4, 2)
    assert f31.weight == d1.weight == Character((-1, 0, 1))
    rng = random.Random(4)
    for _ in range(100):
        n = random_nilpotent(3, rng.randrange(2 ** 31))
        assert f1(n) * f2(n) == d1(n) ** 3
        def e(i, j):
            return n[i - 1, j - 1]
        d_expanded = e(2, 1) * e(3, 2) - e(2, 2) * e(3, 1)
        assert f1(n) == e(2, 1) * d_expanded + e(3, 1) * (e(2, 1) * e(3, 3) - e(3, 1) * e(2, 3))
        assert f2(n) == e(3, 2) * d_expanded + e(3, 1) * (e(1, 1) * e(3, 2) - e(1, 2) * e(3, 1))


def test_det_1_equals_det_2_on_nilpotents():
    d1, d2 = det_k(3, 1), det_k(3, 2)
    rng = random.Random(9)
    for _ in range(500):
        n = random_nilpotent(3, rng.randrange(2 ** 31))
        assert d1(n) == d2(n)


def test_extraction_character():
    assert extraction_character(2).coords == (-1, 1)
    assert extraction_character(3).coords == (-2, 0, 2)
    for n in (2, 3, 4, 5, 6):
        total = Character.zero(n)
        for k in range(1, n):
            total = total + det_k(n, k).weight
        assert extraction_character(n) == total


def test_g_ij_constraints_and_extraction():
    with pytest.raises(ShapeError):
        g_ij(3, 2, 1)
    from nilcone.normalform import PatternSpec, random_pattern_matrix

    for n in (3, 4, 5, 6):
        spec = PatternSpec.borel(n)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if not 2 < j + 2 <= i <= n:
                    continue
                w = g_ij(n, i, j)
                assert w.weight == extraction_character(n)
                for seed in range(4):
                    h = random_pattern_matrix(spec, seed + 13 * i + j)
                    assert w(h) == h[i - 1, j - 1]


def test_stack_multiplies_values_and_adds_weights():
    rng = random.Random(17)
    for trial in range(10):
        a = random_datum(3, rng.randrange(2 ** 31), max_size=3)
        b = random_datum(3, rng.randrange(2 ** 31), max_size=3)
        combined = stack(a, b)
        assert weight_of(combined, 3) == weight_of(a, 3) + weight_of(b, 3)
        n = random_nilpotent(3, rng.randrange(2 ** 31))
        assert evaluate(n, combined) == evaluate(n, a) * evaluate(n, b)


def test_verify_semiinvariance():
    assert verify_semiinvariance(det_k(3, 1), 3, seed=5, matrices=6, elements=4)
    assert verify_semiinvariance(g_ij(4, 4, 2), 4, seed=5, matrices=4, elements=3)
    # mismatched claimed weight must be falsified
    wrong = WeightedInvariant(det_k(3, 1).datum, Character((1, 1, 1)), "wrong")
    assert not verify_semiinvariance(wrong, 3, seed=5, matrices=6, elements=4)


def test_u_invariance_of_random_data():
    rng = random.Random(3)
    for _ in range(5):
        datum = random_datum(3, rng.randrange(2 ** 31))
        n = random_nilpotent(3, rng.randrange(2 ** 31))
        base = evaluate(n, datum)
        u = random_element(ParabolicShape.borel(3), rng.randrange(2 ** 31), unipotent=True)
        assert evaluate(conjugate(u, n), datum) == base
