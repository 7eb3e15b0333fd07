"""Linear-quiver translation of the conjugation action.

A p-vertex line quiver with a loop at the last vertex, bound by the loop's
n-th power, carries the data: the flag gives coordinate embeddings between
the vertex spaces and the nilpotent matrix gives the loop.  Morphism data in
the additive category induce determinantal functions of the loop matrix;
those supported at the last vertex translate literally into block-size data.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import ShapeError, UnsupportedMorphismError
from .groups import ParabolicShape, is_nilpotent
from .linalg import Matrix, Polynomial, rational
from .semiinv import SemiInvariantDatum


@dataclass(frozen=True)
class QuiverShape:
    """Vertex count of the line quiver and the loop's nilpotency order."""

    p: int
    n: int

    def __post_init__(self):
        if self.p < 1 or self.n < 1:
            raise ShapeError("need p >= 1 and n >= 1")


@dataclass(frozen=True)
class Representation:
    """Vertex dimensions, the chain of arrow maps, and the loop map."""

    dims: tuple[int, ...]
    arrow_maps: tuple[Matrix, ...]
    loop_map: Matrix

    def __post_init__(self):
        if len(self.arrow_maps) != len(self.dims) - 1:
            raise ShapeError("need one arrow map per consecutive vertex pair")
        for k, m in enumerate(self.arrow_maps):
            if (m.rows, m.cols) != (self.dims[k + 1], self.dims[k]):
                raise ShapeError(f"arrow map {k} has the wrong shape")
        d_last = self.dims[-1]
        if (self.loop_map.rows, self.loop_map.cols) != (d_last, d_last):
            raise ShapeError("loop map must be square of the last dimension")


def build_MN(n_matrix: Matrix, shape: ParabolicShape) -> Representation:
    """Representation attached to a nilpotent matrix and a flag shape:
    coordinate inclusions along the line, the matrix as the loop."""
    if n_matrix.rows != shape.n or not n_matrix.is_square:
        raise ShapeError("matrix size must match the shape")
    if not is_nilpotent(n_matrix):
        raise ShapeError("loop matrix must be nilpotent")
    dims = shape.dims
    arrows = []
    for k in range(len(dims) - 1):
        rows = [[Fraction(int(i == j)) for j in range(dims[k])] for i in range(dims[k + 1])]
        arrows.append(Matrix.from_rows(rows, cols=dims[k]))
    return Representation(dims, tuple(arrows), n_matrix)


@dataclass(frozen=True)
class MorphismDatum:
    """Morphism between sums of projectives O(1)..O(n) in the bound quiver.

    ``x`` and ``y`` are source and target multiplicity vectors.  For target
    vertex i < n the (i, j) block holds scalars (multiples of the unique
    path); for i = n it holds coefficient sequences over loop powers.
    Blocks with i < j vanish.  The square condition sum(j x_j) = sum(i y_i)
    makes the assembled matrix square.
    """

    x: tuple[int, ...]
    y: tuple[int, ...]
    blocks: tuple[tuple[object, ...], ...]

    def __post_init__(self):
        x = tuple(int(v) for v in self.x)
        y = tuple(int(v) for v in self.y)
        if len(x) != len(y):
            raise ShapeError("source and target vectors must share a length")
        if any(v < 0 for v in x + y):
            raise ShapeError("multiplicities must be nonnegative")
        n = len(x)
        if sum((j + 1) * x[j] for j in range(n)) != sum((i + 1) * y[i] for i in range(n)):
            raise ShapeError("square-size condition violated")
        blocks = []
        for i in range(n):
            row = []
            for j in range(n):
                entry = self.blocks[i][j] if i < len(self.blocks) and j < len(self.blocks[i]) else None
                if entry is None:
                    row.append(None)
                    continue
                if i + 1 < j + 1 and any(_entry_nonzero(e) for sub in entry for e in sub):
                    raise ShapeError("blocks below the path order must vanish")
                if len(entry) != y[i] or any(len(sub) != x[j] for sub in entry):
                    raise ShapeError(f"block ({i + 1},{j + 1}) has wrong multiplicities")
                if i + 1 == n:
                    row.append(tuple(tuple(tuple(rational(c) for c in seq) for seq in sub) for sub in entry))
                else:
                    row.append(tuple(tuple(rational(e) for e in sub) for sub in entry))
            blocks.append(tuple(row))
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "blocks", tuple(blocks))

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def size(self) -> int:
        return sum((j + 1) * self.x[j] for j in range(self.n))


def _entry_nonzero(e) -> bool:
    if isinstance(e, (tuple, list)):
        return any(rational(c) != 0 for c in e)
    return rational(e) != 0


def eval_f_phi(n_matrix: Matrix, phi: MorphismDatum,
               shape: ParabolicShape | None = None) -> Fraction:
    """Determinantal value of a morphism datum at a nilpotent matrix.

    Only the full-flag shape is wired: block (i, j) with j <= i < n is the
    scalar times the corner of the i x i identity, and target-n blocks are
    coefficient combinations of corners of loop powers.  Loop powers of
    exponent >= n vanish and are dropped.
    """
    n = phi.n
    if shape is None:
        shape = ParabolicShape.borel(n)
    if not shape.is_borel or shape.n != n:
        raise ShapeError("only the full-flag shape is wired to this evaluation")
    if n_matrix.rows != n or not n_matrix.is_square:
        raise ShapeError("matrix size must match the morphism")
    powers = [Matrix.identity(n)]
    for _ in range(n - 1):
        powers.append(powers[-1] @ n_matrix)
    h = phi.size
    grid = [[Fraction(0)] * h for _ in range(h)]
    row_off = 0
    for i in range(n):
        for k in range(phi.y[i]):
            col_off = 0
            for j in range(n):
                for l in range(phi.x[j]):
                    block = phi.blocks[i][j]
                    if block is not None and j <= i:
                        if i + 1 < n:
                            # corner of the identity: the first j+1 columns,
                            # so the unit entries sit at the top
                            scalar = block[k][l]
                            if scalar != 0:
                                for r in range(j + 1):
                                    grid[row_off + r][col_off + r] += scalar
                        else:
                            for e, c in enumerate(block[k][l]):
                                if c == 0 or e >= n:
                                    continue
                                power = powers[e]
                                for r in range(i + 1):
                                    src = power.entries[n - (i + 1) + r]
                                    dst = grid[row_off + r]
                                    for s in range(j + 1):
                                        dst[col_off + s] += c * src[s]
                    col_off += j + 1
            row_off += i + 1
    return Matrix.from_rows(grid, cols=h).det()


def datum_from_morphism(phi: MorphismDatum, n: int) -> SemiInvariantDatum:
    """Translate a morphism supported at the last target vertex into block
    sizes (n, ..., n) versus (1 x_1 times, ..., n x_n times) with the
    coefficient sequences as polynomials.  Other targets are rejected; the
    general reduction is not covered."""
    if phi.n != n:
        raise ShapeError("size mismatch")
    if any(phi.y[i] != 0 for i in range(n - 1)):
        raise UnsupportedMorphismError("only morphisms with target concentrated "
                                       "at the last vertex translate directly")
    rows = (n,) * phi.y[n - 1]
    cols = []
    for j in range(n):
        cols.extend([j + 1] * phi.x[j])
    polys = []
    for k in range(phi.y[n - 1]):
        row = []
        for j in range(n):
            block = phi.blocks[n - 1][j]
            for l in range(phi.x[j]):
                if block is None:
                    row.append(Polynomial.zero())
                else:
                    row.append(Polynomial(block[k][l]).truncated(n))
        polys.append(tuple(row))
    return SemiInvariantDatum(rows, tuple(cols), tuple(polys))


def random_morphism(n: int, seed: int, max_size: int = 8) -> MorphismDatum:
    """Random test morphism with target at the last vertex: multiplicities
    small, coefficient support at most three, assembled size at most
    ``max_size``."""
    rng = random.Random(seed)
    y_n = rng.randint(1, max(1, max_size // n))
    h = n * y_n
    x = [0] * n
    remaining = h
    for j in range(n - 1, 0, -1):
        cap = remaining // (j + 1)
        take = rng.randint(0, min(2, cap))
        x[j] = take
        remaining -= take * (j + 1)
    x[0] = remaining
    y = [0] * (n - 1) + [y_n]

    def coeff_seq():
        seq = [Fraction(0)] * min(n, 3)
        support = rng.randint(1, len(seq))
        for pos in rng.sample(range(len(seq)), support):
            seq[pos] = Fraction(rng.randint(-3, 3))
        return tuple(seq)

    last_row = []
    for j in range(n):
        last_row.append(tuple(tuple(coeff_seq() for _ in range(x[j])) for _ in range(y_n)))
    grid = [tuple([None] * n) for _ in range(n - 1)]
    grid.append(tuple(last_row))
    return MorphismDatum(tuple(x), tuple(y), tuple(grid))
