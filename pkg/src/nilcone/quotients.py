"""Explicit quotient maps at small sizes and the obstruction relation beyond.

For 2x2 and 3x3 nilpotent matrices the unipotent invariant ring is known
explicitly; the maps here evaluate its generators, check the single defining
relation, sample orbit separation, and compute the projective quotient point
for the triangular action.  For size four and up, a fixed polynomial
identity between named invariants witnesses that the subdiagonal coordinates
plus the toric data no longer describe the whole quotient.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import PatternError, ShapeError, SingularMatrixError
from .groups import ParabolicShape, random_element
from .linalg import Matrix
from .normalform import PatternSpec, is_generic, random_pattern_matrix
from .semiinv import (SemiInvariantDatum, WeightedInvariant, det_k, evaluate,
                      f_ij, invariants_n3)
from .toric import BlockPair, sum_free_datum


def u_quotient_n2(n_matrix: Matrix) -> Fraction:
    """The quotient coordinate at n=2: the lower-left entry."""
    if n_matrix.rows != 2 or not n_matrix.is_square:
        raise ShapeError("need a 2x2 matrix")
    return n_matrix[1, 0]


def u_quotient_n3(n_matrix: Matrix) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """The four quotient coordinates at n=3; the middle two multiply to the
    cube of the last on every nilpotent input."""
    if n_matrix.rows != 3 or not n_matrix.is_square:
        raise ShapeError("need a 3x3 matrix")
    f31, f1, f2, d1 = invariants_n3()
    return (f31(n_matrix), f1(n_matrix), f2(n_matrix), d1(n_matrix))


def separation_check_U(n: int, trials: int, seed: int) -> bool:
    """Sampled generic separation: distinct pattern matrices must have
    distinct quotient tuples."""
    if n not in (2, 3):
        raise ShapeError("separation is implemented for n in {2, 3}")
    rng = random.Random(seed)
    spec = PatternSpec.unipotent(n)
    quotient = u_quotient_n2 if n == 2 else u_quotient_n3
    for _ in range(trials):
        first = random_pattern_matrix(spec, rng.randrange(2 ** 32))
        second = random_pattern_matrix(spec, rng.randrange(2 ** 32))
        if first == second:
            continue
        if quotient(first) == quotient(second):
            return False
    return True


def git_semistable(n_matrix: Matrix, n: int) -> bool:
    """Semistable locus for the extraction-weight direction at n=2 and 3."""
    if n_matrix.rows != n or not n_matrix.is_square:
        raise ShapeError("matrix size mismatch")
    if n == 2:
        return n_matrix[1, 0] != 0
    if n == 3:
        return is_generic(n_matrix, ParabolicShape.borel(3)) or n_matrix[2, 0] != 0
    raise ShapeError("semistability is implemented for n in {2, 3}")


def git_map_n3(n_matrix: Matrix) -> tuple[Fraction, Fraction]:
    """Projective quotient point (f_{3,1} : det_1), normalised so the first
    nonzero coordinate is one."""
    f31, _, _, d1 = invariants_n3()
    a, b = f31(n_matrix), d1(n_matrix)
    if a == 0 and b == 0:
        raise SingularMatrixError("unstable point: both coordinates vanish")
    scale = a if a != 0 else b
    return (a / scale, b / scale)


def toric_f(n: int, k: int) -> WeightedInvariant:
    """The toric invariant of block sizes (k) versus k ones, realised by its
    acceptable-permutation datum."""
    if not 1 <= k <= n - 1:
        raise ShapeError("k must lie in [1, n-1]")
    datum = sum_free_datum(BlockPair((k,), (1,) * k, n))
    return WeightedInvariant.build(datum, n, f"f_{k}")


def g_invariant(n: int) -> WeightedInvariant:
    """The obstruction invariant: a single corner block at n=4 and a
    two-block datum beyond."""
    if n < 4:
        raise ShapeError("the obstruction needs n >= 4")
    from .linalg import Polynomial

    x = Polynomial.x_power
    if n == 4:
        datum = SemiInvariantDatum((2,), (2,), ((x(1),),))
    else:
        datum = SemiInvariantDatum((n - 2,), (2, n - 4), ((x(1), x(4)),))
    return WeightedInvariant.build(datum, n, "g")


def nonsurjectivity_relation(n: int, trials: int, seed: int) -> bool:
    """Exact check of g * det_(n-3) * det_1 * f_(n-3) * f_(n-1) =
    f_{3,1} f_{4,2} f_(n-3) f_(n-1) - f_{4,1} f_(n-2)^2 det_(n-3) det_1
    on random nilpotent samples.  At n=4 the colliding factors substitute
    literally (det_1 twice, f_1)."""
    if n < 4:
        raise ShapeError("the relation needs n >= 4")
    from .groups import random_nilpotent

    g = g_invariant(n)
    d_n3, d_1 = det_k(n, n - 3), det_k(n, 1)
    f_n3, f_n2, f_n1 = toric_f(n, n - 3), toric_f(n, n - 2), toric_f(n, n - 1)
    f31, f42, f41 = f_ij(n, 3, 1), f_ij(n, 4, 2), f_ij(n, 4, 1)
    rng = random.Random(seed)
    for _ in range(trials):
        sample = random_nilpotent(n, rng.randrange(2 ** 32))
        left = g(sample) * d_n3(sample) * d_1(sample) * f_n3(sample) * f_n1(sample)
        right = (f31(sample) * f42(sample) * f_n3(sample) * f_n1(sample)
                 - f41(sample) * f_n2(sample) ** 2 * d_n3(sample) * d_1(sample))
        if left != right:
            return False
    return True


def u_coordinates(h: Matrix) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Split a nonzero-subdiagonal pattern matrix into its free coordinates
    (below the subdiagonal, row-major) and its subdiagonal torus part."""
    n = h.rows
    spec = PatternSpec.unipotent(n)
    if not spec.contains(h):
        raise PatternError("matrix is not in the nonzero-subdiagonal pattern")
    free = tuple(h[i, j] for i in range(n) for j in range(n) if i >= j + 2)
    torus = tuple(h[i + 1, i] for i in range(n - 1))
    return free, torus


def from_u_coordinates(free, torus) -> Matrix:
    """Inverse of the coordinate split."""
    n = len(torus) + 1
    grid = [[Fraction(0)] * n for _ in range(n)]
    for i, v in enumerate(torus):
        grid[i + 1][i] = Fraction(v)
    queue = list(free)
    for i in range(n):
        for j in range(n):
            if i >= j + 2:
                grid[i][j] = Fraction(queue.pop(0))
    return Matrix.from_rows(grid)


@dataclass(frozen=True)
class QuotientReport:
    """Outcome of a batch of exact relation and separation checks."""

    n: int
    label: str
    seed: int
    trials: int
    checks: tuple[tuple[str, bool], ...]
    samples: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return all(passed for _, passed in self.checks)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "label": self.label,
            "seed": self.seed,
            "trials": self.trials,
            "checks": [{"label": label, "ok": passed} for label, passed in self.checks],
            "samples": list(self.samples),
            "ok": self.ok,
        }


def verify_relations(n: int, trials: int, seed: int) -> QuotientReport:
    """Run the exact relation suite for one size and report per-check flags."""
    from .groups import random_nilpotent

    rng = random.Random(seed)
    checks: list[tuple[str, bool]] = []
    samples: list[str] = []
    if n == 2:
        ok = True
        for _ in range(trials):
            sample = random_nilpotent(2, rng.randrange(2 ** 32))
            value = u_quotient_n2(sample)
            if not samples:
                samples.append(str(value))
            u = random_element(ParabolicShape.borel(2), rng.randrange(2 ** 32), unipotent=True)
            ok = ok and u_quotient_n2(u @ sample @ u.inverse()) == value
        checks.append(("f_{2,1} is U-invariant", ok))
        checks.append(("separation on the pattern", separation_check_U(2, trials, seed)))
    elif n == 3:
        rel_ok = True
        dets_ok = True
        for _ in range(trials):
            sample = random_nilpotent(3, rng.randrange(2 ** 32))
            f31, f1, f2, d1 = u_quotient_n3(sample)
            if not samples:
                samples.append("(" + ", ".join(map(str, (f31, f1, f2, d1))) + ")")
            rel_ok = rel_ok and f1 * f2 == d1 ** 3
            dets_ok = dets_ok and d1 == evaluate(sample, det_k(3, 2).datum)
        checks.append(("f1*f2 = det1^3", rel_ok))
        checks.append(("det1 = det2", dets_ok))
        checks.append(("separation on the pattern", separation_check_U(3, trials, seed)))
    elif n >= 4:
        checks.append(("g*F = F'", nonsurjectivity_relation(n, trials, seed)))
    else:
        raise ShapeError("unsupported size")
    return QuotientReport(n, f"u-quotient relations at n={n}", seed, trials,
                          tuple(checks), tuple(samples))
