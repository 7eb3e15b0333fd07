"""Exact linear algebra over the rationals.

Scalars are ``fractions.Fraction`` values throughout: always in lowest terms,
positive denominator, never rounded.  Matrices and polynomials are immutable;
every operation returns a fresh value, so sharing across threads is safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm, prod

from .errors import ShapeError, SingularMatrixError

Rational = Fraction


def rational(value) -> Fraction:
    """Coerce an int, Fraction, or ``"p/q"`` string to an exact scalar.

    Floats are rejected on purpose: admitting them would smuggle rounding
    into arithmetic whose whole point is exactness.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot build an exact rational from {type(value).__name__}")


@dataclass(frozen=True)
class Matrix:
    """Dense matrix of exact rationals, stored row-major as nested tuples."""

    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ShapeError("negative matrix dimensions")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ShapeError("entry grid does not match declared dimensions")

    @staticmethod
    def from_rows(rows, cols: int | None = None) -> "Matrix":
        """Build a matrix from an iterable of rows, coercing entries exactly.

        ``cols`` is only needed for matrices with zero rows, where the column
        count cannot be inferred.
        """
        grid = tuple(tuple(rational(x) for x in row) for row in rows)
        if grid:
            return Matrix(len(grid), len(grid[0]), grid)
        return Matrix(0, 0 if cols is None else cols, ())

    @staticmethod
    def zeros(rows: int, cols: int) -> "Matrix":
        zero = Fraction(0)
        return Matrix(rows, cols, tuple((zero,) * cols for _ in range(rows)))

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(n, n, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @staticmethod
    def diagonal(values) -> "Matrix":
        vals = [rational(v) for v in values]
        n = len(vals)
        return Matrix(n, n, tuple(tuple(vals[i] if i == j else Fraction(0) for j in range(n)) for i in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("matrix addition needs equal shapes")
        return Matrix(self.rows, self.cols,
                      tuple(tuple(a + b for a, b in zip(ra, rb))
                            for ra, rb in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(-1)

    def scale(self, c) -> "Matrix":
        c = rational(c)
        return Matrix(self.rows, self.cols,
                      tuple(tuple(c * x for x in row) for row in self.entries))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        zero = Fraction(0)
        cols_of_other = tuple(tuple(other.entries[r][c] for r in range(other.rows))
                              for c in range(other.cols))
        grid = tuple(
            tuple(sum((a * b for a, b in zip(row, col)), start=zero) for col in cols_of_other)
            for row in self.entries
        )
        return Matrix(self.rows, other.cols, grid)

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square:
            raise ShapeError("powers need a square matrix")
        if k < 0:
            raise ShapeError("negative matrix powers are not supported")
        result = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base if k > 1 else base
            k >>= 1
        return result

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.entries else tuple(() for _ in range(self.cols)))

    def corner(self, a: int, b: int) -> "Matrix":
        """Submatrix of the last ``a`` rows and first ``b`` columns."""
        if not (0 <= a <= self.rows and 0 <= b <= self.cols):
            raise ShapeError("corner size out of range")
        return Matrix(a, b, tuple(row[:b] for row in self.entries[self.rows - a:]))

    def det(self) -> Fraction:
        """Exact determinant.

        Small sizes expand directly; larger ones clear denominators row by
        row and run integer fraction-free (Bareiss) elimination, which keeps
        every intermediate value an exact minor.
        """
        if not self.is_square:
            raise ShapeError("determinant needs a square matrix")
        n = self.rows
        e = self.entries
        if n == 0:
            return Fraction(1)
        if n == 1:
            return e[0][0]
        if n == 2:
            return e[0][0] * e[1][1] - e[0][1] * e[1][0]
        if n == 3:
            return (e[0][0] * (e[1][1] * e[2][2] - e[1][2] * e[2][1])
                    - e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0])
                    + e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0]))
        scale = Fraction(1)
        m: list[list[int]] = []
        for row in e:
            d = lcm(*(x.denominator for x in row))
            scale *= d
            m.append([int(x * d) for x in row])
        return Fraction(_bareiss_det(m), 1) / scale

    def inverse(self) -> "Matrix":
        if not self.is_square:
            raise ShapeError("inverse needs a square matrix")
        n = self.rows
        aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(self.entries)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
            if pivot is None:
                raise SingularMatrixError("matrix is singular")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            pv = aug[col][col]
            aug[col] = [x / pv for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return Matrix.from_rows([row[n:] for row in aug], cols=n)

    def to_lists(self) -> list[list[Fraction]]:
        return [list(row) for row in self.entries]


def _bareiss_det(m: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix; mutates ``m``."""
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i, row_k = m[i], m[k]
            head = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - head * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class Polynomial:
    """Univariate polynomial over the rationals; ``coeffs[k]`` multiplies x**k."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        cs = tuple(rational(c) for c in self.coeffs)
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial(())

    @staticmethod
    def one() -> "Polynomial":
        return Polynomial((1,))

    @staticmethod
    def x_power(k: int) -> "Polynomial":
        if k < 0:
            raise ShapeError("negative exponent")
        return Polynomial((0,) * k + (1,))

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial given degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def truncated(self, degree_bound: int) -> "Polynomial":
        """Drop all terms of degree >= ``degree_bound``."""
        return Polynomial(self.coeffs[:max(degree_bound, 0)])

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append("x" if c == 1 else f"{c}*x")
            else:
                parts.append(f"x^{k}" if c == 1 else f"{c}*x^{k}")
        return " + ".join(parts)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return a @ b


def mat_pow(a: Matrix, k: int) -> Matrix:
    return a ** k


def det(a: Matrix) -> Fraction:
    return a.det()


def corner_submatrix(a: Matrix, rows: int, cols: int) -> Matrix:
    return a.corner(rows, cols)


def poly_eval_matrix(p: Polynomial, n: Matrix) -> Matrix:
    """Evaluate ``p`` at a square matrix, with the constant term times identity."""
    if not n.is_square:
        raise ShapeError("polynomial evaluation needs a square matrix")
    acc = Matrix.zeros(n.rows, n.cols)
    power = Matrix.identity(n.rows)
    for k, c in enumerate(p.coeffs):
        if k > 0:
            power = power @ n
        if c != 0:
            acc = acc + power.scale(c)
    return acc


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form in place; returns (rows, pivot column list)."""
    pivots: list[int] = []
    r = 0
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return rows, pivots


def _primitive(vec: list[Fraction]) -> tuple[Fraction, ...]:
    """Scale a rational vector to a primitive integer one with positive lead."""
    denom = lcm(*(x.denominator for x in vec)) if vec else 1
    ints = [int(x * denom) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g:
        ints = [x // g for x in ints]
    lead = next((x for x in ints if x != 0), 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(Fraction(x) for x in ints)


def solve_homogeneous(a: Matrix) -> list[tuple[Fraction, ...]]:
    """Exact basis of the nullspace of ``a``; empty iff only the zero solution.

    Basis vectors are normalised to primitive integer form with positive
    leading entry, so results are reproducible.
    """
    if a.rows == 0 or a.cols == 0:
        return [tuple(Fraction(int(i == j)) for j in range(a.cols)) for i in range(a.cols)]
    rows, pivots = _rref([list(r) for r in a.entries])
    free = [c for c in range(a.cols) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [Fraction(0)] * a.cols
        vec[fcol] = Fraction(1)
        for r, pcol in enumerate(pivots):
            vec[pcol] = -rows[r][fcol]
        basis.append(_primitive(vec))
    return basis


def solve_linear(a: Matrix, b: list[Fraction]) -> tuple[list[Fraction] | None, list[tuple[Fraction, ...]]]:
    """Solve ``a x = b`` exactly: (particular solution or None, nullspace basis)."""
    if a.rows != len(b):
        raise ShapeError("right-hand side length mismatch")
    if a.rows == 0:
        return [Fraction(0)] * a.cols, solve_homogeneous(a)
    aug = [list(r) + [rational(x)] for r, x in zip(a.entries, b)]
    rows, pivots = _rref(aug)
    if a.cols in pivots:
        return None, solve_homogeneous(a)
    particular = [Fraction(0)] * a.cols
    for r, pcol in enumerate(pivots):
        particular[pcol] = rows[r][a.cols]
    return particular, solve_homogeneous(a)


def rank(a: Matrix) -> int:
    if a.rows == 0 or a.cols == 0:
        return 0
    _, pivots = _rref([list(r) for r in a.entries])
    return len(pivots)


def product(values) -> Fraction:
    return prod(values, start=Fraction(1))
