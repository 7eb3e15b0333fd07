"""Block-determinantal semi-invariants of nilpotent matrices.

A datum is a pair of block-size lists (a_1..a_s), (a'_1..a'_t) with equal
sums together with an s x t grid of univariate polynomials.  Evaluating the
(i, j) polynomial at N, taking the corner of the last a_i rows and first
a'_j columns, and assembling the blocks gives an r x r matrix whose
determinant is the semi-invariant's value.  The weight of the resulting
function under upper-triangular conjugation depends only on the block sizes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import ShapeError
from .groups import Character, ParabolicShape, char_eval, conjugate, random_element, random_nilpotent
from .linalg import Matrix, Polynomial, product


@dataclass(frozen=True)
class SemiInvariantDatum:
    """Block sizes plus a polynomial grid.

    Zero-size blocks (which general index formulas produce at boundary
    indices) are dropped together with their polynomial row or column; the
    assembled block matrix is unchanged by this normalisation.
    """

    row_blocks: tuple[int, ...]
    col_blocks: tuple[int, ...]
    polys: tuple[tuple[Polynomial, ...], ...]

    def __post_init__(self):
        rows = tuple(int(a) for a in self.row_blocks)
        cols = tuple(int(a) for a in self.col_blocks)
        grid = tuple(tuple(_as_poly(p) for p in row) for row in self.polys)
        if len(grid) != len(rows) or any(len(r) != len(cols) for r in grid):
            raise ShapeError("polynomial grid does not match block counts")
        if any(a < 0 for a in rows + cols):
            raise ShapeError("negative block size")
        keep_r = [i for i, a in enumerate(rows) if a > 0]
        keep_c = [j for j, a in enumerate(cols) if a > 0]
        rows = tuple(rows[i] for i in keep_r)
        cols = tuple(cols[j] for j in keep_c)
        grid = tuple(tuple(grid[i][j] for j in keep_c) for i in keep_r)
        if sum(rows) != sum(cols):
            raise ShapeError("row and column block sizes must have equal sums")
        object.__setattr__(self, "row_blocks", rows)
        object.__setattr__(self, "col_blocks", cols)
        object.__setattr__(self, "polys", grid)

    @property
    def size(self) -> int:
        """Side length r of the assembled block matrix."""
        return sum(self.row_blocks)

    def max_degree(self) -> int:
        return max((p.degree for row in self.polys for p in row), default=-1)


def _as_poly(p) -> Polynomial:
    if isinstance(p, Polynomial):
        return p
    return Polynomial(tuple(p))


def stack(first: SemiInvariantDatum, second: SemiInvariantDatum) -> SemiInvariantDatum:
    """Block-diagonal concatenation; the values multiply and the weights add."""
    zero = Polynomial.zero()
    top = tuple(row + (zero,) * len(second.col_blocks) for row in first.polys)
    bottom = tuple((zero,) * len(first.col_blocks) + row for row in second.polys)
    return SemiInvariantDatum(first.row_blocks + second.row_blocks,
                              first.col_blocks + second.col_blocks,
                              top + bottom)


@dataclass(frozen=True)
class WeightedInvariant:
    """A datum together with its conjugation weight and a display label."""

    datum: SemiInvariantDatum
    weight: Character
    label: str = ""

    @staticmethod
    def build(datum: SemiInvariantDatum, n: int, label: str = "") -> "WeightedInvariant":
        return WeightedInvariant(datum, weight_of(datum, n), label)

    @property
    def n(self) -> int:
        return self.weight.n

    def __call__(self, n_matrix: Matrix) -> Fraction:
        return evaluate(n_matrix, self.datum)


def block_matrix(n_matrix: Matrix, datum: SemiInvariantDatum) -> Matrix:
    """Assemble the r x r block matrix of polynomial-corner blocks."""
    if not n_matrix.is_square:
        raise ShapeError("block assembly needs a square matrix")
    n = n_matrix.rows
    if any(a > n for a in datum.row_blocks + datum.col_blocks):
        raise ShapeError("block size exceeds the matrix size")
    powers = [Matrix.identity(n)]
    for _ in range(max(datum.max_degree(), 0)):
        powers.append(powers[-1] @ n_matrix)
    r = datum.size
    grid = [[Fraction(0)] * r for _ in range(r)]
    row_off = 0
    for bi, a in enumerate(datum.row_blocks):
        col_off = 0
        for bj, b in enumerate(datum.col_blocks):
            poly = datum.polys[bi][bj]
            for k, c in enumerate(poly.coeffs):
                if c == 0:
                    continue
                power = powers[k]
                for ii in range(a):
                    src = power.entries[n - a + ii]
                    dst = grid[row_off + ii]
                    for jj in range(b):
                        dst[col_off + jj] += c * src[jj]
            col_off += b
        row_off += a
    return Matrix.from_rows(grid, cols=r)


def evaluate(n_matrix: Matrix, datum: SemiInvariantDatum) -> Fraction:
    """Value of the semi-invariant: the determinant of the assembled blocks."""
    return block_matrix(n_matrix, datum).det()


def weight_of(datum: SemiInvariantDatum, n: int) -> Character:
    """Conjugation weight: each row block a contributes the last a diagonal
    characters positively, each column block a' the first a' negatively."""
    if any(a > n for a in datum.row_blocks + datum.col_blocks):
        raise ShapeError("block size exceeds n")
    coords = [0] * n
    for a in datum.row_blocks:
        for m in range(n - a, n):
            coords[m] += 1
    for a in datum.col_blocks:
        for m in range(a):
            coords[m] -= 1
    return Character(tuple(coords))


def det_k(n: int, k: int) -> WeightedInvariant:
    """Corner-minor invariant: determinant of the k x k corner of N^(n-k)."""
    if not 1 <= k <= n - 1:
        raise ShapeError("k must lie in [1, n-1]")
    datum = SemiInvariantDatum((k,), (k,), ((Polynomial.x_power(n - k),),))
    return WeightedInvariant.build(datum, n, f"det_{k}")


def f_ij(n: int, i: int, j: int) -> WeightedInvariant:
    """The two-by-two-block family separating generic subdiagonal orbits."""
    if not (1 <= j and j < i - 1 and i <= n):
        raise ShapeError("need 1 <= j < i-1 <= n-1")
    x = Polynomial.x_power
    datum = SemiInvariantDatum(
        (j - 1, n - i + 1),
        (j, n - i),
        ((x(n - j + 1), Polynomial.zero()),
         (x(1), x(i))),
    )
    return WeightedInvariant.build(datum, n, f"f_{{{i},{j}}}")


def invariants_n3() -> tuple[WeightedInvariant, WeightedInvariant, WeightedInvariant, WeightedInvariant]:
    """The four generators of the unipotent invariant ring at n=3:
    f_{3,1}, f_1, f_2, det_1."""
    x = Polynomial.x_power
    f31 = WeightedInvariant.build(
        SemiInvariantDatum((1,), (1,), ((x(1),),)), 3, "f_{3,1}")
    f1 = WeightedInvariant.build(
        SemiInvariantDatum((2,), (1, 1), ((x(1), x(2)),)), 3, "f_1")
    f2 = WeightedInvariant.build(
        SemiInvariantDatum((1, 1), (2,), ((x(2),), (x(1),))), 3, "f_2")
    return f31, f1, f2, det_k(3, 1)


def extraction_character(n: int) -> Character:
    """The common weight of all entry-extraction invariants: the sum of the
    weights of det_1, ..., det_(n-1).  Coordinate m equals 2m - n - 1."""
    if n < 2:
        raise ShapeError("need n >= 2")
    return Character(tuple(2 * (m + 1) - n - 1 for m in range(n)))


def _complement_ascending(n: int, used: tuple[int, ...]) -> list[int]:
    taken = set(a for a in used if a > 0)
    return [a for a in range(1, n) if a not in taken]


def g_ij(n: int, i: int, j: int) -> WeightedInvariant:
    """Entry-extraction invariant: on the subdiagonal-one normal-form pattern
    its value is the (i, j) entry.  Four index regimes need different data;
    in each, both block-size lists are permutations of (1, ..., n-1), so the
    weight is extraction_character(n)."""
    if not (2 < j + 2 <= i <= n):
        raise ShapeError("need 2 < j+2 <= i <= n")
    x = Polynomial.x_power
    zero = Polynomial.zero()
    m = n - i + 1
    if m not in (j - 1, j):
        head_a = (j - 1, m, j)
        head_c = (j, m, j - 1)
        tail = _complement_ascending(n, (j - 1, j, m))
        a = head_a + tuple(tail)
        c = head_c + tuple(tail)
        polys = [[zero] * len(c) for _ in range(len(a))]
        polys[0][0] = x(n - j + 1)
        polys[1][0] = x(1)
        polys[1][1] = x(i)
        polys[2][1] = x(i - j)
        polys[2][2] = x(n - j + 1)
        for k in range(3, len(a)):
            polys[k][k] = x(n - a[k])
    elif m == j:
        head_a = (j - 1, j)
        head_c = (j, j - 1)
        tail = _complement_ascending(n, (j - 1, j))
        a = head_a + tuple(tail)
        c = head_c + tuple(tail)
        polys = [[zero] * len(c) for _ in range(len(a))]
        polys[0][0] = x(n - j + 1)
        polys[1][1] = x(n - j + 1)
        polys[1][0] = x(1)
        for k in range(2, len(a)):
            polys[k][k] = x(n - a[k])
    elif j == 2:
        # m == j - 1 forces i == n here
        a = (2, 1) + tuple(range(3, n))
        c = (1, 2) + tuple(range(3, n))
        polys = [[zero] * len(c) for _ in range(len(a))]
        polys[0][0] = x(n - 2)
        polys[0][1] = x(n - 1)
        polys[1][1] = x(1)
        for k in range(2, len(a)):
            polys[k][k] = x(n - a[k])
    else:
        # m == j - 1 with j >= 3
        tail_a = _complement_ascending(n, (j - 1, j))
        tail_c = [t for t in tail_a if t != 1]
        a = (j, j - 1) + tuple(tail_a)
        c = (1, j, j - 1) + tuple(tail_c)
        polys = [[zero] * len(c) for _ in range(len(a))]
        polys[0][0] = x(n - j)
        polys[0][1] = x(n - j + 1)
        polys[1][1] = x(1)
        polys[1][2] = x(n - j + 2)
        polys[2][2] = x(n - j + 1)
        for k in range(3, len(a)):
            polys[k][k] = x(n - a[k])
    datum = SemiInvariantDatum(a, c, tuple(tuple(row) for row in polys))
    return WeightedInvariant.build(datum, n, f"g_{{{i},{j}}}")


def verify_semiinvariance(inv: WeightedInvariant, n: int, seed: int = 0,
                          matrices: int = 25, elements: int = 10) -> bool:
    """Sampled exact check of the weight law f(b N b^-1) = chi(b) f(N) and of
    invariance under unipotent conjugation."""
    if inv.n != n:
        raise ShapeError("invariant size mismatch")
    rng = random.Random(seed)
    borel = ParabolicShape.borel(n)
    for _ in range(matrices):
        nm = random_nilpotent(n, rng.randrange(2 ** 32))
        base = evaluate(nm, inv.datum)
        for _ in range(elements):
            b = random_element(borel, rng.randrange(2 ** 32))
            if evaluate(conjugate(b, nm), inv.datum) != char_eval(inv.weight, b) * base:
                return False
        for _ in range(elements):
            u = random_element(borel, rng.randrange(2 ** 32), unipotent=True)
            if evaluate(conjugate(u, nm), inv.datum) != base:
                return False
    return True


def random_datum(n: int, seed: int, max_size: int | None = None) -> SemiInvariantDatum:
    """Random small datum for sampling-based tests: block sizes in [1, n],
    polynomial degrees below n, coefficients small integers."""
    rng = random.Random(seed)
    max_size = max_size or n + 2
    r = rng.randint(1, max_size)

    def sizes(total: int) -> list[int]:
        out = []
        while total:
            part = rng.randint(1, min(n, total))
            out.append(part)
            total -= part
        return out

    rows = sizes(r)
    cols = sizes(r)
    polys = []
    for _ in rows:
        row = []
        for _ in cols:
            if rng.random() < 0.35:
                row.append(Polynomial.zero())
            else:
                row.append(Polynomial(tuple(rng.randint(-3, 3) for _ in range(rng.randint(1, n)))))
        polys.append(tuple(row))
    return SemiInvariantDatum(tuple(rows), tuple(cols), tuple(polys))


def det_product(n_matrix: Matrix, n: int) -> Fraction:
    """Product of all corner-minor invariants det_1 ... det_(n-1)."""
    return product(evaluate(n_matrix, det_k(n, k).datum) for k in range(1, n))
