"""Block-triangular subgroups, characters, and conjugation on nilpotent matrices.

Sampling helpers draw numerators from [-9, 9] and denominators from [1, 4];
small magnitudes keep exact arithmetic fast while avoiding degenerate
coincidences.  Every sampler takes an explicit seed and is reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import ShapeError, SingularMatrixError
from .linalg import Matrix, rational


@dataclass(frozen=True)
class ParabolicShape:
    """Block sizes (b_1, ..., b_p) of an upper-block-triangular subgroup of GL_n."""

    n: int
    blocks: tuple[int, ...]

    def __post_init__(self):
        blocks = tuple(int(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if any(b <= 0 for b in blocks):
            raise ShapeError("block sizes must be positive")
        if sum(blocks) != self.n:
            raise ShapeError("block sizes must sum to n")

    @staticmethod
    def borel(n: int) -> "ParabolicShape":
        return ParabolicShape(n, (1,) * n)

    @staticmethod
    def full(n: int) -> "ParabolicShape":
        return ParabolicShape(n, (n,))

    @property
    def p(self) -> int:
        return len(self.blocks)

    @property
    def dims(self) -> tuple[int, ...]:
        """Cumulative dimension vector (d_1, ..., d_p) with d_p = n."""
        out = []
        total = 0
        for b in self.blocks:
            total += b
            out.append(total)
        return tuple(out)

    @property
    def is_borel(self) -> bool:
        return all(b == 1 for b in self.blocks)

    def block_of(self, index: int) -> int:
        """0-based block index containing the 0-based row/column ``index``."""
        if not 0 <= index < self.n:
            raise ShapeError("index out of range")
        total = 0
        for k, b in enumerate(self.blocks):
            total += b
            if index < total:
                return k
        raise ShapeError("unreachable")


@dataclass(frozen=True)
class Character:
    """Integer exponent vector in the basis of diagonal-entry characters."""

    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    @staticmethod
    def zero(n: int) -> "Character":
        return Character((0,) * n)

    @property
    def n(self) -> int:
        return len(self.coords)

    def __add__(self, other: "Character") -> "Character":
        if self.n != other.n:
            raise ShapeError("character length mismatch")
        return Character(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Character") -> "Character":
        return self + (-other)

    def __neg__(self) -> "Character":
        return Character(tuple(-c for c in self.coords))


def is_in_parabolic(g: Matrix, shape: ParabolicShape) -> bool:
    """True iff ``g`` is invertible and vanishes strictly below the block diagonal."""
    if not g.is_square or g.rows != shape.n:
        return False
    for i in range(shape.n):
        for j in range(shape.n):
            if shape.block_of(i) > shape.block_of(j) and g[i, j] != 0:
                return False
    return g.det() != 0


def is_in_borel(g: Matrix) -> bool:
    if not g.is_square:
        return False
    n = g.rows
    return (all(g[i, j] == 0 for i in range(n) for j in range(i))
            and all(g[i, i] != 0 for i in range(n)))


def is_in_unipotent(g: Matrix) -> bool:
    if not g.is_square:
        return False
    n = g.rows
    return (all(g[i, j] == 0 for i in range(n) for j in range(i))
            and all(g[i, i] == 1 for i in range(n)))


def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 4))


def random_nonzero_int(rng: random.Random) -> Fraction:
    value = rng.choice([k for k in range(-9, 10) if k != 0])
    return Fraction(value)


def random_element(shape: ParabolicShape, seed: int, *, unipotent: bool = False) -> Matrix:
    """Random invertible matrix in the block pattern; deterministic per seed.

    Diagonal entries are nonzero integers and singular draws are rejected,
    so the result is always invertible.  With ``unipotent=True`` the shape
    must be Borel and the diagonal is forced to one.
    """
    if unipotent and not shape.is_borel:
        raise ShapeError("unipotent sampling needs the Borel shape")
    rng = random.Random(seed)
    n = shape.n
    while True:
        grid = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if shape.block_of(i) > shape.block_of(j):
                    continue
                if i == j:
                    grid[i][j] = Fraction(1) if unipotent else random_nonzero_int(rng)
                else:
                    grid[i][j] = random_rational(rng)
        g = Matrix.from_rows(grid)
        if g.det() != 0:
            return g


def random_nilpotent(n: int, seed: int) -> Matrix:
    """Random nilpotent matrix: a strictly lower-triangular one conjugated
    by a random invertible matrix.  Deterministic per seed."""
    rng = random.Random(seed)
    lower = [[random_rational(rng) if i > j else Fraction(0) for j in range(n)] for i in range(n)]
    low = Matrix.from_rows(lower)
    while True:
        g = Matrix.from_rows([[random_rational(rng) for _ in range(n)] for _ in range(n)])
        if g.det() != 0:
            return g @ low @ g.inverse()


def conjugate(g: Matrix, n: Matrix) -> Matrix:
    """Exact conjugate g n g^(-1)."""
    if not (g.is_square and n.is_square and g.rows == n.rows):
        raise ShapeError("conjugation needs equal square sizes")
    if g.det() == 0:
        raise SingularMatrixError("conjugating element is singular")
    return g @ n @ g.inverse()


def char_eval(chi: Character, g: Matrix) -> Fraction:
    """Value of a diagonal character: the product of diagonal entries to
    their integer exponents."""
    if not g.is_square or g.rows != chi.n:
        raise ShapeError("character/matrix size mismatch")
    value = Fraction(1)
    for c, i in zip(chi.coords, range(chi.n)):
        d = g[i, i]
        if c < 0 and d == 0:
            raise SingularMatrixError("zero diagonal entry with negative exponent")
        value *= d ** c
    return value


def is_nilpotent(n: Matrix) -> bool:
    if not n.is_square:
        return False
    return (n ** n.rows).is_zero()


def random_generic_nilpotent(n: int, seed: int, shape: ParabolicShape | None = None,
                             max_tries: int = 200) -> Matrix:
    """Random nilpotent matrix passing the genericity minors for ``shape``
    (Borel by default).  Rejection sampling; the failure locus has measure
    zero, so a handful of tries suffices."""
    from .normalform import is_generic  # local import to avoid a cycle

    shape = shape or ParabolicShape.borel(n)
    for k in range(max_tries):
        cand = random_nilpotent(n, seed + 7919 * k)
        if is_generic(cand, shape):
            return cand
    raise SingularMatrixError("no generic sample found; seed family is degenerate")
