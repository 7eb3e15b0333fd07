import random

import pytest

from nilcone.errors import ShapeError, UnsupportedMorphismError
from nilcone.groups import ParabolicShape, random_element, random_nilpotent, conjugate
from nilcone.linalg import Matrix
from nilcone.quiver import (MorphismDatum, QuiverShape, Representation,
                            build_MN, datum_from_morphism, eval_f_phi,
                            random_morphism)
from nilcone.semiinv import evaluate

N2 = Matrix.from_rows([[0, 0], [7, 0]])


def phi_n2():
    # one target copy at the last vertex; two source copies of the first;
    # coefficient sequences pick loop powers 0 and 1
    blocks = ((None, None), ((((1,), (0, 1)),), None))
    return MorphismDatum((2, 0), (0, 1), blocks)


def test_quiver_shape_validation():
    with pytest.raises(ShapeError):
        QuiverShape(0, 3)


def test_build_MN():
    rep = build_MN(N2, ParabolicShape.borel(2))
    assert rep.dims == (1, 2)
    assert rep.arrow_maps[0] == Matrix.from_rows([[1], [0]])
    assert rep.loop_map == N2
    assert (rep.loop_map ** 2).is_zero()
    zero = build_MN(Matrix.zeros(3, 3), ParabolicShape(3, (2, 1)))
    assert zero.dims == (2, 3)
    assert zero.loop_map.is_zero()


def test_build_MN_rejects_non_nilpotent():
    with pytest.raises(ShapeError):
        build_MN(Matrix.identity(2), ParabolicShape.borel(2))


def test_morphism_square_condition():
    with pytest.raises(ShapeError):
        MorphismDatum((1, 0), (0, 1), ((None, None), (None, None)))


def test_eval_f_phi_frozen_example():
    phi = phi_n2()
    assert eval_f_phi(N2, phi) == 7
    datum = datum_from_morphism(phi, 2)
    assert datum.row_blocks == (2,)
    assert datum.col_blocks == (1, 1)
    assert [str(p) for p in datum.polys[0]] == ["1", "x"]


def test_eval_f_phi_degenerate_columns():
    # identical coefficient sequences give proportional columns, so zero
    blocks = ((None, None), ((((0, 1), (0, 3)),), None))
    phi = MorphismDatum((2, 0), (0, 1), blocks)
    assert eval_f_phi(N2, phi) == 0


def test_identity_like_morphism():
    n = 3
    blocks = (
        (None, None, None),
        (None, None, None),
        (None, None, (((1,),),)),
    )
    phi = MorphismDatum((0, 0, 1), (0, 0, 1), blocks)
    datum = datum_from_morphism(phi, 3)
    assert datum.row_blocks == (3,) and datum.col_blocks == (3,)
    sample = random_nilpotent(3, 5)
    assert eval_f_phi(sample, phi) == 1
    assert evaluate(sample, datum) == 1


def test_datum_from_morphism_rejects_lower_targets():
    # a target copy below the last vertex is outside the direct translation,
    # though direct evaluation still handles it
    blocks = ((((2,),), None), (None, (((1, 1),),)))
    phi = MorphismDatum((1, 1), (1, 1), blocks)
    with pytest.raises(UnsupportedMorphismError):
        datum_from_morphism(phi, 2)
    # diagonal blocks: the scalar 2 and I + N, which is unitriangular
    assert eval_f_phi(N2, phi) == 2


def test_random_morphism_equivalence():
    for n in (2, 3, 4):
        for s in range(8):
            phi = random_morphism(n, seed=31 * n + s)
            datum = datum_from_morphism(phi, n)
            for t in range(3):
                sample = random_nilpotent(n, seed=97 * n + 5 * s + t)
                assert eval_f_phi(sample, phi) == evaluate(sample, datum)


def test_eval_f_phi_is_u_invariant():
    rng = random.Random(13)
    for n in (2, 3):
        phi = random_morphism(n, seed=n)
        sample = random_nilpotent(n, rng.randrange(2 ** 31))
        base = eval_f_phi(sample, phi)
        for _ in range(5):
            u = random_element(ParabolicShape.borel(n), rng.randrange(2 ** 31), unipotent=True)
            assert eval_f_phi(conjugate(u, sample), phi) == base


def test_high_power_coefficients_are_dropped():
    # loop powers at or above the bound act as zero, so the first source
    # column vanishes entirely and the translated polynomial truncates
    blocks = ((None, None), ((((0, 0, 1, 5), (1,)),), None))
    phi = MorphismDatum((2, 0), (0, 1), blocks)
    assert eval_f_phi(N2, phi) == 0
    datum = datum_from_morphism(phi, 2)
    assert datum.polys[0][0].is_zero()
    assert str(datum.polys[0][1]) == "1"
    assert evaluate(N2, datum) == 0
