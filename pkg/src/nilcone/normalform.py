"""Generic normal forms under block-triangular conjugation, with certificates.

Each group kind has a cell pattern on n x n matrices: forced zeros, forced
ones on the subdiagonal (free nonzeros for the unipotent group), and free
cells.  A generic nilpotent matrix is conjugate to exactly one pattern
matrix; the functions here compute it and return an in-group witness g with
g N = H g, checked exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .errors import (ConsistencyError, GenericityError, NotConjugateError,
                     PatternError, ShapeError)
from .groups import (ParabolicShape, is_in_borel, is_in_parabolic,
                     is_in_unipotent, random_rational, random_nonzero_int)
from .linalg import Matrix, solve_homogeneous, solve_linear
from .semiinv import det_k, det_product, evaluate, g_ij

ZERO = "zero"
ONE = "one"
NONZERO = "nonzero"
FREE = "free"

BOREL = "borel"
UNIPOTENT = "unipotent"
PARABOLIC = "parabolic"


@dataclass(frozen=True)
class PatternSpec:
    """Cell classification grid for one group kind."""

    n: int
    kind: str
    cells: tuple[tuple[str, ...], ...]

    @staticmethod
    def for_shape(shape: ParabolicShape) -> "PatternSpec":
        n = shape.n
        grid = tuple(tuple(_parabolic_cell(i, j, shape) for j in range(1, n + 1))
                     for i in range(1, n + 1))
        return PatternSpec(n, PARABOLIC, grid)

    @staticmethod
    def borel(n: int) -> "PatternSpec":
        base = PatternSpec.for_shape(ParabolicShape.borel(n))
        return PatternSpec(n, BOREL, base.cells)

    @staticmethod
    def unipotent(n: int) -> "PatternSpec":
        base = PatternSpec.borel(n)
        grid = tuple(tuple(NONZERO if kind == ONE else kind for kind in row)
                     for row in base.cells)
        return PatternSpec(n, UNIPOTENT, grid)

    def free_cells(self) -> list[tuple[int, int]]:
        """0-based coordinates of unconstrained cells."""
        return [(i, j) for i in range(self.n) for j in range(self.n)
                if self.cells[i][j] == FREE]

    def contains(self, m: Matrix) -> bool:
        if not m.is_square or m.rows != self.n:
            return False
        for i in range(self.n):
            for j in range(self.n):
                kind = self.cells[i][j]
                value = m[i, j]
                if kind == ZERO and value != 0:
                    return False
                if kind == ONE and value != 1:
                    return False
                if kind == NONZERO and value == 0:
                    return False
        return True


def _parabolic_cell(i: int, j: int, shape: ParabolicShape) -> str:
    """Classify cell (i, j), 1-based, for the block-size pattern."""
    if i <= j:
        return ZERO
    if i == j + 1:
        return ONE
    dims = (0,) + shape.dims
    ki = shape.block_of(i - 1) + 1
    kj = shape.block_of(j - 1) + 1
    if shape.p >= 2 and i == dims[1] + 1 and j < dims[1]:
        return ZERO
    if ki == kj and i >= dims[ki - 1] + 3 and j <= dims[ki] - 2:
        return ZERO
    if ki >= 2 and j == dims[ki - 1] and i >= dims[ki - 1] + 2:
        return ZERO
    return FREE


def pattern(shape_or_kind, n: int | None = None) -> PatternSpec:
    """Pattern for a ParabolicShape, or for the kind strings 'borel' and
    'unipotent' together with a size."""
    if isinstance(shape_or_kind, ParabolicShape):
        return PatternSpec.for_shape(shape_or_kind)
    if shape_or_kind == BOREL:
        return PatternSpec.borel(n)
    if shape_or_kind == UNIPOTENT:
        return PatternSpec.unipotent(n)
    raise ShapeError(f"unknown pattern kind {shape_or_kind!r}")


@dataclass(frozen=True)
class ConjugacyCertificate:
    g: Matrix
    group_kind: str
    shape: ParabolicShape | None = None

    def in_group(self) -> bool:
        if self.group_kind == BOREL:
            return is_in_borel(self.g)
        if self.group_kind == UNIPOTENT:
            return is_in_unipotent(self.g)
        if self.group_kind == PARABOLIC:
            return self.shape is not None and is_in_parabolic(self.g, self.shape)
        return False


def genericity_minors(n_matrix: Matrix, shape: ParabolicShape) -> list[Fraction]:
    """The corner minors det((N^(n-d_k)) corner d_k x d_k) for k < p."""
    n = shape.n
    if n_matrix.rows != n:
        raise ShapeError("matrix size does not match the shape")
    out = []
    for d in shape.dims[:-1]:
        out.append((n_matrix ** (n - d)).corner(d, d).det())
    return out


def is_generic(n_matrix: Matrix, shape: ParabolicShape) -> bool:
    return all(m != 0 for m in genericity_minors(n_matrix, shape))


def rank_condition(n_matrix: Matrix, shape: ParabolicShape) -> bool:
    """Equivalent genericity test: the first d_k columns of N^(n-d_k) are
    linearly independent for every k < p."""
    from .linalg import rank

    n = shape.n
    for d in shape.dims[:-1]:
        power = n_matrix ** (n - d)
        first_cols = Matrix.from_rows([row[:d] for row in power.entries], cols=d)
        if rank(first_cols) != d:
            return False
    return True


def _group_cells(kind: str, n: int, shape: ParabolicShape | None) -> list[tuple[int, int]]:
    if kind == BOREL:
        return [(i, j) for i in range(n) for j in range(i, n)]
    if kind == PARABOLIC:
        return [(i, j) for i in range(n) for j in range(n)
                if shape.block_of(i) <= shape.block_of(j)]
    raise ShapeError(f"unsupported witness kind {kind!r}")


def conjugacy_witness(n_matrix: Matrix, h_matrix: Matrix, kind: str,
                      shape: ParabolicShape | None = None, seed: int = 0,
                      budget: int = 32) -> Matrix:
    """Invertible in-group g with g N = H g, or NotConjugateError.

    The equation is linear in g's pattern cells.  A random rational point of
    the solution space is invertible whenever any invertible solution exists,
    so a few seeded draws suffice; for n <= 3 an exhaustive grid evaluation
    of the solution-space determinant (degree <= n per variable, so n+1
    values per variable decide it) turns the failure into an exact
    non-conjugacy certificate.
    """
    n = n_matrix.rows
    if h_matrix.rows != n or not n_matrix.is_square or not h_matrix.is_square:
        raise ShapeError("witness needs equal square sizes")
    if kind == UNIPOTENT:
        return _unipotent_witness(n_matrix, h_matrix)
    cells = _group_cells(kind, n, shape)
    index = {cell: k for k, cell in enumerate(cells)}
    rows = []
    for r in range(n):
        for c in range(n):
            coeffs = [Fraction(0)] * len(cells)
            for k in range(n):
                if (r, k) in index:
                    coeffs[index[(r, k)]] += n_matrix[k, c]
                if (k, c) in index:
                    coeffs[index[(k, c)]] -= h_matrix[r, k]
            rows.append(coeffs)
    basis = solve_homogeneous(Matrix.from_rows(rows, cols=len(cells)))
    if not basis:
        raise NotConjugateError("the conjugacy equations force g = 0")

    def assemble(coeffs) -> Matrix:
        grid = [[Fraction(0)] * n for _ in range(n)]
        for weight, vec in zip(coeffs, basis):
            if weight == 0:
                continue
            for (i, j), value in zip(cells, vec):
                if value != 0:
                    grid[i][j] += weight * value
        return Matrix.from_rows(grid)

    rng = random.Random(seed)
    for _ in range(budget):
        g = assemble([Fraction(rng.randint(-9, 9)) for _ in basis])
        if g.det() != 0:
            return g
    if n <= 3:
        for point in iproduct(range(n + 1), repeat=len(basis)):
            g = assemble([Fraction(v) for v in point])
            if g.det() != 0:
                return g
        raise NotConjugateError("solution space contains no invertible element")
    raise NotConjugateError(f"no invertible witness found within budget {budget}")


def _unipotent_witness(n_matrix: Matrix, h_matrix: Matrix) -> Matrix:
    """Solve (I+X) N = H (I+X) for strictly upper X; affine in X's cells."""
    n = n_matrix.rows
    cells = [(i, j) for i in range(n) for j in range(i + 1, n)]
    index = {cell: k for k, cell in enumerate(cells)}
    rows = []
    rhs = []
    for r in range(n):
        for c in range(n):
            coeffs = [Fraction(0)] * len(cells)
            for k in range(n):
                if (r, k) in index:
                    coeffs[index[(r, k)]] += n_matrix[k, c]
                if (k, c) in index:
                    coeffs[index[(k, c)]] -= h_matrix[r, k]
            rows.append(coeffs)
            rhs.append(h_matrix[r, c] - n_matrix[r, c])
    particular, _ = solve_linear(Matrix.from_rows(rows, cols=len(cells)), rhs)
    if particular is None:
        raise NotConjugateError("no unipotent witness exists")
    grid = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for (i, j), value in zip(cells, particular):
        grid[i][j] = value
    return Matrix.from_rows(grid)


def normal_form_B(n_matrix: Matrix, seed: int = 0) -> tuple[Matrix, ConjugacyCertificate]:
    """Unique subdiagonal-one normal form under upper-triangular conjugation.

    Free entries are extracted as ratios of equal-weight semi-invariants:
    the entry invariants over the product of all corner minors, which is one
    on the pattern.  The witness is found from the linear conjugacy system.
    """
    n = n_matrix.rows
    shape = ParabolicShape.borel(n)
    if not is_generic(n_matrix, shape):
        raise GenericityError("a corner minor vanishes; no generic normal form")
    denom = det_product(n_matrix, n)
    grid = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n):
        grid[i][i - 1] = Fraction(1)
    for i in range(1, n + 1):
        for j in range(1, i - 1):
            grid[i - 1][j - 1] = evaluate(n_matrix, g_ij(n, i, j).datum) / denom
    h = Matrix.from_rows(grid)
    try:
        g = conjugacy_witness(n_matrix, h, BOREL, seed=seed)
    except NotConjugateError as exc:
        raise ConsistencyError(f"extraction produced a non-conjugate form: {exc}") from exc
    return h, ConjugacyCertificate(g, BOREL)


def normal_form_U(n_matrix: Matrix, seed: int = 0) -> tuple[Matrix, ConjugacyCertificate]:
    """Unique nonzero-subdiagonal normal form under unipotent conjugation.

    Factor the Borel witness b = t u with t its diagonal; then u' = t^-1 b
    is unipotent and carries N to t^-1 H_B t, which lies in the pattern."""
    h_borel, cert = normal_form_B(n_matrix, seed=seed)
    b = cert.g
    n = b.rows
    t = Matrix.diagonal([b[i, i] for i in range(n)])
    t_inv = t.inverse()
    u = t_inv @ b
    h = t_inv @ h_borel @ t
    if not is_in_unipotent(u):
        raise ConsistencyError("diagonal factorisation left a non-unipotent part")
    if u @ n_matrix != h @ u:
        raise ConsistencyError("unipotent certificate fails its equation")
    return h, ConjugacyCertificate(u, UNIPOTENT)


def _elementary(n: int, a: int, b: int, c: Fraction) -> Matrix:
    grid = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    grid[a][b] = c
    return Matrix.from_rows(grid)


def normal_form_P(n_matrix: Matrix, shape: ParabolicShape,
                  seed: int = 0) -> tuple[Matrix, ConjugacyCertificate]:
    """Normal form under block-triangular conjugation.

    Starts from the Borel normal form (full genericity is demanded, a
    conservative strengthening: the refined flag's existence is only
    available there) and clears the extra forced zeros of the block pattern:

    * cells inside a diagonal block, and the column just left of each block,
      fall to elementary conjugations I + c E(i, j+1) processed by increasing
      column, which never disturbs already-cleared cells;
    * the leaks in row d_1 + 1 left of the first block are removed in one
      stroke by conjugating with a polynomial in the block's regular Jordan
      cell, the closed form of the basis recursion.
    """
    n = n_matrix.rows
    if shape.n != n:
        raise ShapeError("shape size mismatch")
    if shape.is_borel:
        h, cert = normal_form_B(n_matrix, seed=seed)
        return h, ConjugacyCertificate(cert.g, PARABOLIC, shape)
    h, cert = normal_form_B(n_matrix, seed=seed)
    g_total = cert.g
    spec = PatternSpec.for_shape(shape)
    dims = (0,) + shape.dims
    d1 = shape.dims[0]

    def block_of(idx1: int) -> int:
        return shape.block_of(idx1 - 1) + 1

    sweep = []
    band = []
    for j in range(1, n + 1):
        for i in range(1, n + 1):
            if spec.cells[i - 1][j - 1] != ZERO or i <= j + 1:
                continue
            ki, kj = block_of(i), block_of(j)
            if ki == kj or j == dims[ki - 1]:
                sweep.append((i, j))
            elif i == d1 + 1 and j < d1:
                band.append((i, j))
            else:
                raise ConsistencyError(f"unclassified forced zero at {(i, j)}")

    cleared: list[tuple[int, int]] = []
    for (i, j) in sweep:
        c = -h[i - 1, j - 1]
        if c != 0:
            g_e = _elementary(n, i - 1, j, c)
            h = g_e @ h @ _elementary(n, i - 1, j, -c)
            g_total = g_e @ g_total
        cleared.append((i, j))
        for (ci, cj) in cleared:
            if h[ci - 1, cj - 1] != 0:
                raise ConsistencyError(f"clearing {(i, j)} disturbed {(ci, cj)}")

    if band:
        # Toeplitz correction: diagonals of g restricted to the first block
        # are the leak entries themselves, read off the current row d_1 + 1.
        grid = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for m in range(1, d1):
            coeff = h[d1, d1 - m - 1]
            for x in range(d1 - m):
                grid[x + m][x] = coeff
        g_c = Matrix.from_rows(grid)
        h = g_c @ h @ g_c.inverse()
        g_total = g_c @ g_total

    if not spec.contains(h):
        raise ConsistencyError("result escaped the block pattern")
    certificate = ConjugacyCertificate(g_total, PARABOLIC, shape)
    if not certificate.in_group() or g_total @ n_matrix != h @ g_total:
        raise ConsistencyError("block-pattern certificate fails its equation")
    return h, certificate


def random_pattern_matrix(spec: PatternSpec, seed: int) -> Matrix:
    """Random member of a pattern: free cells get bounded rationals, nonzero
    cells nonzero integers."""
    rng = random.Random(seed)
    grid = []
    for i in range(spec.n):
        row = []
        for j in range(spec.n):
            kind = spec.cells[i][j]
            if kind == ZERO:
                row.append(Fraction(0))
            elif kind == ONE:
                row.append(Fraction(1))
            elif kind == NONZERO:
                row.append(random_nonzero_int(rng))
            else:
                row.append(random_rational(rng))
        grid.append(row)
    return Matrix.from_rows(grid)
