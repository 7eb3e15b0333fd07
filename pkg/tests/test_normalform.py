import random
from fractions import Fraction

import pytest
import sympy

from nilcone.errors import (ConsistencyError, GenericityError,
                            NotConjugateError, ShapeError)
from nilcone.groups import (ParabolicShape, conjugate, is_in_borel,
                            random_element, random_generic_nilpotent,
                            random_nilpotent)
from nilcone.linalg import Matrix
from nilcone.normalform import (BOREL, PARABOLIC, UNIPOTENT,
                                ConjugacyCertificate, PatternSpec,
                                conjugacy_witness, genericity_minors,
                                is_generic, normal_form_B, normal_form_P,
                                normal_form_U, pattern, random_pattern_matrix,
                                rank_condition)


def borel_pattern_matrix(n, free):
    grid = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n):
        grid[i][i - 1] = Fraction(1)
    for (i, j), v in free.items():
        grid[i][j] = Fraction(v)
    return Matrix.from_rows(grid)


def test_pattern_borel_n3():
    spec = PatternSpec.borel(3)
    assert spec.cells[1][0] == "one" and spec.cells[2][1] == "one"
    assert spec.cells[2][0] == "free"
    assert all(spec.cells[i][j] == "zero" for i in range(3) for j in range(3) if i <= j)


def test_pattern_free_count_is_triangular():
    for n in range(2, 8):
        assert len(PatternSpec.borel(n).free_cells()) == (n - 1) * (n - 2) // 2


def test_pattern_shape_342():
    spec = pattern(ParabolicShape(9, (3, 4, 2)))
    expected = {(4, 0), (4, 1), (5, 0), (5, 1), (6, 0), (6, 1),
                (7, 0), (7, 1), (7, 2), (7, 3), (7, 4), (7, 5),
                (8, 0), (8, 1), (8, 2), (8, 3), (8, 4), (8, 5)}
    assert set(spec.free_cells()) == expected
    # forced zeros just below the first block boundary and left of each block
    assert spec.cells[3][0] == "zero" and spec.cells[3][1] == "zero"
    assert spec.cells[4][2] == "zero" and spec.cells[8][6] == "zero"


def test_pattern_unipotent():
    spec = pattern("unipotent", 2)
    assert spec.cells[1][0] == "nonzero"
    sample = random_pattern_matrix(spec, 3)
    assert sample[1, 0] != 0


def test_is_generic_frozen_cases():
    n = Matrix.from_rows([[0, 0, 0], [1, 0, 0], [0, 2, 0]])
    assert is_generic(n, ParabolicShape.borel(3))
    assert genericity_minors(n, ParabolicShape.borel(3)) == [2, 2]
    assert not is_generic(Matrix.zeros(3, 3), ParabolicShape.borel(3))
    jordan9 = borel_pattern_matrix(9, {})
    assert is_generic(jordan9, ParabolicShape(9, (3, 4, 2)))


def test_is_generic_matches_rank_condition():
    rng = random.Random(2)
    for n in (3, 4, 5, 6):
        shape = ParabolicShape.borel(n)
        for _ in range(8):
            sample = random_nilpotent(n, rng.randrange(2 ** 31))
            assert is_generic(sample, shape) == rank_condition(sample, shape)


def test_det_k_is_one_on_pattern_symbolically():
    # symbolic certainty: free entries as indeterminates, n <= 5
    for n in (3, 4, 5):
        spec = PatternSpec.borel(n)
        syms = {}
        m = sympy.zeros(n, n)
        for i in range(1, n):
            m[i, i - 1] = 1
        for (i, j) in spec.free_cells():
            syms[(i, j)] = sympy.Symbol(f"h_{i}_{j}")
            m[i, j] = syms[(i, j)]
        for k in range(1, n):
            power = m ** (n - k)
            corner = power[n - k:, :k]
            assert sympy.simplify(corner.det() - 1) == 0


def test_normal_form_B_frozen_example():
    n = Matrix.from_rows([[0, 0, 0], [1, 0, 0], [0, 2, 0]])
    h, cert = normal_form_B(n)
    assert h == borel_pattern_matrix(3, {})
    assert cert.in_group()
    assert cert.g @ n == h @ cert.g
    # diag(1, 1, 1/2) is one valid witness; ours need not equal it, but must work
    explicit = Matrix.diagonal([1, 1, Fraction(1, 2)])
    assert explicit @ n == h @ explicit


def test_normal_form_B_requires_genericity():
    with pytest.raises(GenericityError):
        normal_form_B(Matrix.zeros(3, 3))


def test_normal_form_B_already_in_pattern():
    h0 = borel_pattern_matrix(4, {(2, 0): Fraction(5, 3), (3, 1): 2, (3, 0): -1})
    h, cert = normal_form_B(h0)
    assert h == h0
    assert cert.g @ h0 == h @ cert.g


def test_normal_form_B_orbit_invariance_and_idempotence():
    rng = random.Random(6)
    for n in (3, 4):
        sample = random_generic_nilpotent(n, rng.randrange(2 ** 31))
        h, _ = normal_form_B(sample)
        for _ in range(5):
            b = random_element(ParabolicShape.borel(n), rng.randrange(2 ** 31))
            h2, _ = normal_form_B(conjugate(b, sample))
            assert h2 == h
        again, _ = normal_form_B(h)
        assert again == h


def test_normal_form_U():
    n2 = Matrix.from_rows([[0, 0], [7, 0]])
    h, cert = normal_form_U(n2)
    assert h == n2
    assert cert.group_kind == UNIPOTENT and cert.in_group()
    rng = random.Random(8)
    sample = random_generic_nilpotent(3, 5)
    h, cert = normal_form_U(sample)
    assert pattern("unipotent", 3).contains(h)
    assert cert.g @ sample == h @ cert.g
    for _ in range(5):
        u = random_element(ParabolicShape.borel(3), rng.randrange(2 ** 31), unipotent=True)
        h2, _ = normal_form_U(conjugate(u, sample))
        assert h2 == h


def test_normal_form_U_idempotent_on_pattern():
    h0 = random_pattern_matrix(pattern("unipotent", 4), 12)
    h, _ = normal_form_U(h0)
    assert h == h0


def test_normal_form_P_borel_shape_delegates():
    sample = random_generic_nilpotent(3, 4)
    hb, _ = normal_form_B(sample)
    hp, cert = normal_form_P(sample, ParabolicShape.borel(3))
    assert hp == hb
    assert cert.group_kind == PARABOLIC


def test_normal_form_P_full_group_gives_regular_form():
    sample = random_generic_nilpotent(4, 3)
    h, cert = normal_form_P(sample, ParabolicShape.full(4))
    assert h == borel_pattern_matrix(4, {})
    assert cert.in_group() and cert.g @ sample == h @ cert.g


def test_normal_form_P_shape_342():
    shape = ParabolicShape(9, (3, 4, 2))
    spec = pattern(shape)
    sample = random_generic_nilpotent(9, 17)
    h, cert = normal_form_P(sample, shape, seed=1)
    assert spec.contains(h)
    assert cert.in_group()
    assert cert.g @ sample == h @ cert.g


def test_normal_form_P_orbit_invariance():
    rng = random.Random(10)
    for blocks in [(2, 1), (2, 2), (1, 2, 1), (3, 2)]:
        n = sum(blocks)
        shape = ParabolicShape(n, blocks)
        sample = random_generic_nilpotent(n, rng.randrange(2 ** 31))
        h, _ = normal_form_P(sample, shape)
        hits = 0
        while hits < 3:
            p = random_element(shape, rng.randrange(2 ** 31))
            moved = conjugate(p, sample)
            if not is_generic(moved, ParabolicShape.borel(n)):
                continue
            h2, _ = normal_form_P(moved, shape)
            assert h2 == h
            hits += 1


def test_conjugacy_witness_identity_pair():
    sample = random_nilpotent(3, 3)
    g = conjugacy_witness(sample, sample, BOREL)
    assert is_in_borel(g)
    assert g @ sample == sample @ g


def test_conjugacy_witness_rejects_distinct_orbits():
    h1 = borel_pattern_matrix(3, {(2, 0): 0})
    h2 = borel_pattern_matrix(3, {(2, 0): 1})
    with pytest.raises(NotConjugateError):
        conjugacy_witness(h1, h2, BOREL)


def test_conjugacy_witness_sympy_cross_check():
    # independent confirmation that the solution space determinant vanishes
    h1 = borel_pattern_matrix(3, {(2, 0): 2})
    h2 = borel_pattern_matrix(3, {(2, 0): 5})
    gsym = sympy.Matrix(3, 3, lambda i, j: sympy.Symbol(f"g_{i}_{j}") if i <= j else 0)
    m1 = sympy.Matrix(3, 3, lambda i, j: sympy.Rational(str(h1[i, j])))
    m2 = sympy.Matrix(3, 3, lambda i, j: sympy.Rational(str(h2[i, j])))
    eqs = gsym * m1 - m2 * gsym
    sols = sympy.solve([sympy.Eq(e, 0) for e in eqs], dict=True)
    for sol in sols:
        assert sympy.simplify(gsym.subs(sol).det()) == 0


def test_unipotent_witness():
    sample = random_generic_nilpotent(3, 19)
    h, cert = normal_form_U(sample)
    g = conjugacy_witness(sample, h, UNIPOTENT)
    assert g @ sample == h @ g
