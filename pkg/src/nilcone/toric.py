"""Toric invariants on subdiagonal matrices and their exponent cone.

A strictly lower-triangular matrix with nonzero subdiagonal has a toric
part: the subdiagonal alone.  An invariant is toric when it only sees that
part, where it is a monomial in the subdiagonal entries x_1..x_(n-1).  For
sum-free block sizes the monomial's exponent vector is a closed-form count,
and an acceptable permutation of the block matrix realises the invariant as
a single product of entries.  The exponent vectors of all sum-free data at a
given size generate a pointed cone in the integer lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import (AcceptabilityError, ConsistencyError, NotSumFreeError,
                     NotToricError, PatternError, ScaleError, ShapeError)
from .linalg import (Matrix, Polynomial, _primitive, rank, solve_homogeneous,
                     solve_linear)
from .normalform import PatternSpec
from .semiinv import SemiInvariantDatum, block_matrix, evaluate

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class BlockPair:
    """Row and column block sizes with a common sum, inside an ambient size.

    All the split/change/block/datum combinatorics live here as methods;
    indices are 1-based to keep them aligned with the usual formulas.
    """

    a: tuple[int, ...]
    a_prime: tuple[int, ...]
    n: int

    def __post_init__(self):
        a = tuple(int(v) for v in self.a)
        ap = tuple(int(v) for v in self.a_prime)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "a_prime", ap)
        if not a or not ap:
            raise ShapeError("block lists must be nonempty")
        if any(not 1 <= v <= self.n - 1 for v in a + ap):
            raise ShapeError("block sizes must lie in [1, n-1]")
        if sum(a) != sum(ap):
            raise ShapeError("row and column blocks must have equal sums")

    @property
    def r(self) -> int:
        return sum(self.a)

    @property
    def s(self) -> int:
        return len(self.a)

    @property
    def t(self) -> int:
        return len(self.a_prime)

    def sorted(self) -> "BlockPair":
        return BlockPair(tuple(sorted(self.a)), tuple(sorted(self.a_prime)), self.n)

    def transposed(self) -> "BlockPair":
        return BlockPair(self.a_prime, self.a, self.n)

    # -- block/datum lookups ------------------------------------------------

    def hb(self, i: int) -> int:
        """Row-block index containing global row i."""
        return _locate(self.a, i)[0]

    def hd(self, i: int) -> int:
        """Offset of global row i inside its row block."""
        return _locate(self.a, i)[1]

    def vb(self, j: int) -> int:
        return _locate(self.a_prime, j)[0]

    def vd(self, j: int) -> int:
        return _locate(self.a_prime, j)[1]

    # -- changes and splits ---------------------------------------------------

    def hc(self, k: int) -> int:
        """Minimal column-block index whose prefix sum strictly exceeds the
        k-th row prefix; 0 at k = 0 by convention."""
        if k == 0:
            return 0
        if not 1 <= k <= self.s:
            raise ShapeError("index out of range")
        target = sum(self.a[:k])
        total = 0
        for m, v in enumerate(self.a_prime, start=1):
            total += v
            if total > target:
                return m
        raise ShapeError("no strict overshoot exists at this index")

    def hs(self, k: int) -> int:
        return sum(self.a_prime[:self.hc(k)]) - sum(self.a[:k])

    def ch(self, k: int) -> int:
        return self.a_prime[self.hc(k) - 1] - self.hs(k)

    def vc(self, k: int) -> int:
        if k == 0:
            return 0
        if not 1 <= k <= self.t:
            raise ShapeError("index out of range")
        target = sum(self.a_prime[:k])
        total = 0
        for m, v in enumerate(self.a, start=1):
            total += v
            if total > target:
                return m
        raise ShapeError("no strict overshoot exists at this index")

    def vs(self, k: int) -> int:
        return sum(self.a[:self.vc(k)]) - sum(self.a_prime[:k])

    def cv(self, k: int) -> int:
        # complement of the vertical split; the mirrored formula reads from
        # the row blocks, which the vertical change indexes
        return self.a[self.vc(k) - 1] - self.vs(k)


def _locate(sizes: tuple[int, ...], index: int) -> tuple[int, int]:
    if index < 1:
        raise ShapeError("indices are 1-based")
    total = 0
    for k, v in enumerate(sizes, start=1):
        if index <= total + v:
            return k, index - total
        total += v
    raise ShapeError("index out of range")


def is_sum_free(bp: BlockPair) -> bool:
    """No proper subset of the row blocks shares its sum with a proper subset
    of the column blocks; the simultaneously-empty pair does not count."""
    left = _proper_subset_sums(bp.a)
    right = _proper_subset_sums(bp.a_prime)
    return not (left & right)


def _proper_subset_sums(sizes: tuple[int, ...]) -> set[int]:
    sums = set()
    for size in range(1, len(sizes)):
        for combo in combinations(range(len(sizes)), size):
            sums.add(sum(sizes[i] for i in combo))
    return sums


def toric_part(h: Matrix) -> Matrix:
    """Keep the subdiagonal, zero everything else; input must be strictly
    lower triangular with nonzero subdiagonal."""
    spec = PatternSpec.unipotent(h.rows)
    if not spec.contains(h):
        raise PatternError("matrix is not in the nonzero-subdiagonal pattern")
    n = h.rows
    grid = [[h[i, j] if i == j + 1 else Fraction(0) for j in range(n)] for i in range(n)]
    return Matrix.from_rows(grid)


def is_acceptable_entry(i: int, j: int, bp: BlockPair) -> bool:
    """The (i, j) entry supports a positive loop power on subdiagonal input."""
    if not (1 <= i <= bp.r and 1 <= j <= bp.r):
        raise ShapeError("entry out of range")
    return bp.vd(j) < bp.hd(i) + bp.n - bp.a[bp.hb(i) - 1]


def acceptable_permutation(bp: BlockPair) -> tuple[int, ...]:
    """Permutation sigma with every (i, sigma(i)) acceptable, for sum-free
    ascending block sizes.

    At each internal row boundary whose following diagonal entries fail, the
    window spanned by the column block containing the boundary is shifted
    cyclically by the split; elsewhere sigma is the identity.  The
    construction is asserted, not assumed: a non-acceptable output raises.
    """
    if list(bp.a) != sorted(bp.a) or list(bp.a_prime) != sorted(bp.a_prime):
        raise ShapeError("block sizes must be sorted ascending")
    if not is_sum_free(bp):
        raise NotSumFreeError("acceptable-permutation construction needs sum-free sizes")
    r = bp.r
    sigma = list(range(1, r + 1))
    for k in range(1, bp.s):
        boundary = sum(bp.a[:k])
        hs = bp.hs(k)
        ch = bp.ch(k)
        window = range(boundary - ch + 1, boundary + hs + 1)
        if all(is_acceptable_entry(i, i, bp) for i in window):
            continue
        for i in window:
            sigma[i - 1] = i + hs if i <= boundary else i - ch
    if sorted(sigma) != list(range(1, r + 1)):
        raise ConsistencyError("shift windows collided; not a permutation")
    for i in range(1, r + 1):
        if not is_acceptable_entry(i, sigma[i - 1], bp):
            raise ConsistencyError(f"constructed permutation unacceptable at {i}")
    return tuple(sigma)


def datum_from_permutation(bp: BlockPair, sigma: tuple[int, ...]) -> SemiInvariantDatum:
    """Monomial datum whose selected entries realise the toric invariant.

    Block (k, l) receives the loop power matching the first selected entry
    it contains; all selected entries in one block must agree on it.
    """
    exponents: dict[tuple[int, int], int] = {}
    for i in range(1, bp.r + 1):
        j = sigma[i - 1]
        k, l = bp.hb(i), bp.vb(j)
        e = bp.n - bp.a[k - 1] + bp.hd(i) - bp.vd(j)
        if e < 1:
            raise AcceptabilityError(f"entry ({i}, {j}) admits no positive power")
        if exponents.setdefault((k, l), e) != e:
            raise ConsistencyError("selected entries disagree inside one block")
    zero = Polynomial.zero()
    polys = tuple(tuple(Polynomial.x_power(exponents[(k, l)]) if (k, l) in exponents else zero
                        for l in range(1, bp.t + 1))
                  for k in range(1, bp.s + 1))
    return SemiInvariantDatum(bp.a, bp.a_prime, polys)


def sum_free_datum(bp: BlockPair) -> SemiInvariantDatum:
    return datum_from_permutation(bp, acceptable_permutation(bp))


def eval_via_permutation(h: Matrix, datum: SemiInvariantDatum,
                         sigma: tuple[int, ...]) -> Fraction:
    """Single-permutation value: the signed product of the selected entries
    of the assembled block matrix.  Coefficients ride along with the entries;
    the sign is the permutation's.  A zero factor raises, since acceptable
    selections are nonzero on generic subdiagonal input."""
    assembled = block_matrix(h, datum)
    value = Fraction(_permutation_sign(sigma))
    for i, j in enumerate(sigma, start=1):
        factor = assembled[i - 1, j - 1]
        if factor == 0:
            raise AcceptabilityError(f"selected entry ({i}, {j}) vanishes")
        value *= factor
    return value


def _permutation_sign(sigma: tuple[int, ...]) -> int:
    seen = [False] * len(sigma)
    sign = 1
    for start in range(len(sigma)):
        if seen[start]:
            continue
        length = 0
        cursor = start
        while not seen[cursor]:
            seen[cursor] = True
            cursor = sigma[cursor] - 1
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class ToricExponent:
    """Exponent vector of a monomial in the subdiagonal entries."""

    h: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "h", tuple(int(v) for v in self.h))


def toric_exponents(bp: BlockPair) -> ToricExponent:
    """Closed-form exponents of the sum-free toric invariant: the last one is
    the number of row blocks, and each earlier one counts columns reaching a
    depth minus rows reaching a co-depth."""
    if not is_sum_free(bp):
        raise NotSumFreeError("exponent formula needs sum-free sizes")
    n, s, t = bp.n, bp.s, bp.t
    out = [0] * (n - 1)
    out[n - 2] = s
    for l in range(1, n - 1):
        value = t
        for k in range(2, l + 1):
            value += sum(1 for v in bp.a_prime if v >= k)
        for k in range(1, l):
            value -= sum(1 for v in bp.a if v >= n - k)
        out[l - 1] = value
    return ToricExponent(tuple(out))


def _toric_matrix(n: int, subdiagonal) -> Matrix:
    grid = [[Fraction(0)] * n for _ in range(n)]
    for i, v in enumerate(subdiagonal):
        grid[i + 1][i] = Fraction(v)
    return Matrix.from_rows(grid)


def toric_exponents_oracle(datum: SemiInvariantDatum, n: int) -> ToricExponent:
    """Independent exponent recovery by prime evaluation.

    Each exponent is the prime valuation of the ratio f(one coordinate set
    to p) / f(all ones); the overall scalar cancels in the ratio.  Two full
    prime assignments then cross-check multiplicativity; any mismatch means
    the function is not a monomial of the subdiagonal and raises.
    """
    base = evaluate(_toric_matrix(n, [1] * (n - 1)), datum)
    if base == 0:
        raise NotToricError("function vanishes on the subdiagonal locus")
    exponents = []
    for idx in range(n - 1):
        ones = [1] * (n - 1)
        ones[idx] = 2
        ratio = evaluate(_toric_matrix(n, ones), datum) / base
        exponents.append(_exact_log(ratio, 2))
    for assignment in (_PRIMES[:n - 1], _PRIMES[n - 1:2 * (n - 1)]):
        value = evaluate(_toric_matrix(n, assignment), datum) / base
        expected = Fraction(1)
        for p, e in zip(assignment, exponents):
            expected *= Fraction(p) ** e
        if value != expected:
            raise NotToricError("prime assignments disagree; not a monomial")
    return ToricExponent(tuple(exponents))


def _exact_log(value: Fraction, base: int) -> int:
    if value <= 0:
        raise NotToricError("monomial values must be positive at positive input")
    e = 0
    while value > 1:
        value /= base
        e += 1
    while value < 1:
        value *= base
        e -= 1
    if value != 1:
        raise NotToricError("ratio is not an exact prime power")
    return e


@dataclass(frozen=True)
class ToricCone:
    """Finitely generated cone in the integer lattice; must be pointed."""

    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        gens = []
        seen = set()
        for g in self.generators:
            vec = tuple(int(v) for v in g)
            if any(vec) and vec not in seen:
                seen.add(vec)
                gens.append(vec)
        gens.sort()
        object.__setattr__(self, "generators", tuple(gens))
        if not self.generators:
            raise ShapeError("a cone needs at least one nonzero generator")
        dims = {len(g) for g in self.generators}
        if len(dims) != 1:
            raise ShapeError("generators must share a dimension")
        if not _is_pointed(self.generators):
            raise ShapeError("cone is not strongly convex")

    @property
    def dim(self) -> int:
        return len(self.generators[0])

    def contains(self, vector) -> bool:
        return cone_contains(self.generators, tuple(vector))


def _is_pointed(gens: tuple[tuple[int, ...], ...]) -> bool:
    if all(all(v >= 0 for v in g) for g in gens):
        return True
    # pointed iff no nonzero nonnegative combination of generators vanishes
    d = len(gens[0])
    rows = [[Fraction(gens[k][i]) for k in range(len(gens))] for i in range(d)]
    rows.append([Fraction(1)] * len(gens))
    rhs = [Fraction(0)] * d + [Fraction(1)]
    return not _nonneg_feasible(rows, rhs)


def cone_contains(generators, vector) -> bool:
    """Exact membership: is the vector a nonnegative rational combination?"""
    gens = list(generators)
    d = len(vector)
    if any(len(g) != d for g in gens):
        raise ShapeError("dimension mismatch")
    rows = [[Fraction(g[i]) for g in gens] for i in range(d)]
    rhs = [Fraction(v) for v in vector]
    return _nonneg_feasible(rows, rhs)


def _nonneg_feasible(rows: list[list[Fraction]], rhs: list[Fraction]) -> bool:
    """Does A x = b admit x >= 0?  Solve the equalities exactly, then run
    Fourier-Motzkin elimination on the free parameters."""
    a = Matrix.from_rows(rows, cols=len(rows[0]) if rows else 0)
    particular, basis = solve_linear(a, rhs)
    if particular is None:
        return False
    # each coordinate k gives the inequality particular[k] + sum_t c_kt t >= 0
    ineqs = []
    for k in range(a.cols):
        coeffs = [vec[k] for vec in basis]
        ineqs.append((coeffs, particular[k]))
    return _fm_feasible(ineqs, len(basis))


def _fm_feasible(ineqs: list[tuple[list[Fraction], Fraction]], n_vars: int) -> bool:
    for var in range(n_vars):
        lower, upper, rest = [], [], []
        for coeffs, const in ineqs:
            c = coeffs[var]
            if c > 0:
                lower.append((coeffs, const))
            elif c < 0:
                upper.append((coeffs, const))
            else:
                rest.append((coeffs, const))
        new = rest
        for lc, lconst in lower:
            for uc, uconst in upper:
                scale_l, scale_u = -uc[var], lc[var]
                coeffs = [scale_l * a + scale_u * b for a, b in zip(lc, uc)]
                coeffs[var] = Fraction(0)
                new.append((coeffs, scale_l * lconst + scale_u * uconst))
        ineqs = new
    return all(const >= 0 for _, const in ineqs)


def enumerate_sum_free(n: int, bound: int) -> list[BlockPair]:
    """All sum-free pairs of ascending partitions with parts below n and a
    common sum at most ``bound``, in a deterministic order."""
    out = []
    for r in range(1, bound + 1):
        parts = _ascending_partitions(r, n - 1)
        for a in parts:
            for ap in parts:
                bp = BlockPair(a, ap, n)
                if is_sum_free(bp):
                    out.append(bp)
    return out


def _ascending_partitions(total: int, max_part: int) -> list[tuple[int, ...]]:
    result: list[tuple[int, ...]] = []

    def rec(remaining: int, min_part: int, prefix: tuple[int, ...]):
        if remaining == 0:
            result.append(prefix)
            return
        for part in range(min_part, min(max_part, remaining) + 1):
            rec(remaining - part, part, prefix + (part,))

    rec(total, 1, ())
    return result


def minimal_semigroup_generators(vectors) -> list[tuple[int, ...]]:
    """Drop every vector that is a nonnegative integer combination of the
    others; ascending total-degree order makes the reduction deterministic."""
    pool = sorted(set(tuple(int(x) for x in v) for v in vectors),
                  key=lambda v: (sum(v), v))
    pool = [v for v in pool if any(v)]
    changed = True
    while changed:
        changed = False
        for v in list(pool):
            others = [w for w in pool if w != v]
            if others and _is_nonneg_int_combo(v, others):
                pool.remove(v)
                changed = True
    return pool


def _is_nonneg_int_combo(target: tuple[int, ...], gens: list[tuple[int, ...]]) -> bool:
    if all(v == 0 for v in target):
        return True
    for k, g in enumerate(gens):
        if all(gv <= tv for gv, tv in zip(g, target)):
            reduced = tuple(tv - gv for tv, gv in zip(target, g))
            if _is_nonneg_int_combo(reduced, gens[k:]):
                return True
    return False


def toric_cone(n: int, enumeration_bound: int | None = None) -> ToricCone:
    """Cone spanned by the exponent vectors of all sum-free data up to the
    enumeration bound (twice n-1 by default), reduced to a minimal semigroup
    generating set first."""
    if n < 2:
        raise ShapeError("need n >= 2")
    bound = enumeration_bound if enumeration_bound is not None else 2 * (n - 1)
    vectors = [toric_exponents(bp).h for bp in enumerate_sum_free(n, bound)]
    return ToricCone(tuple(minimal_semigroup_generators(vectors)))


def dual_cone(cone: ToricCone) -> ToricCone:
    """Generators of the dual cone by facet-normal enumeration.

    Only full-dimensional pointed cones are supported; in that regime every
    extreme ray of the dual is orthogonal to some d-1 of the generators.
    """
    gens = cone.generators
    d = cone.dim
    if d == 1:
        return ToricCone(((1,),) if gens[0][0] > 0 else ((-1,),))
    if _span_rank(gens) < d:
        raise ScaleError("dual generators need a full-dimensional cone")
    found = set()
    for subset in combinations(gens, d - 1):
        a = Matrix.from_rows([[Fraction(v) for v in g] for g in subset], cols=d)
        kernel = solve_homogeneous(a)
        if len(kernel) != 1:
            continue
        for sign in (1, -1):
            w = tuple(int(sign * v) for v in _primitive([Fraction(x) for x in kernel[0]]))
            if all(sum(wi * gi for wi, gi in zip(w, g)) >= 0 for g in gens):
                found.add(w)
    if not found:
        raise ScaleError("no dual rays found; cone outside supported regime")
    return ToricCone(tuple(sorted(found)))


def _span_rank(gens) -> int:
    return rank(Matrix.from_rows([[Fraction(v) for v in g] for g in gens], cols=len(gens[0])))


def semigroup_generators(cone: ToricCone) -> list[tuple[int, ...]]:
    """Hilbert generators of the cone's lattice points, by graded search.

    A strictly positive grading is read off the dual cone; every generator
    lies in the box of lattice points graded at most the sum of the cone
    generators' grades, so a bounded enumeration plus reducibility
    elimination is exhaustive.
    """
    d = cone.dim
    if d > 4:
        raise ScaleError("lattice-point search supports dimension at most 4")
    dual = dual_cone(cone)
    grading = tuple(sum(col) for col in zip(*dual.generators))
    if any(_grade(grading, g) <= 0 for g in cone.generators):
        raise ScaleError("no strictly positive grading; cone is not pointed enough")
    limit = sum(_grade(grading, g) for g in cone.generators)
    bounds = []
    for i in range(d):
        hi = max(0, *(abs(g[i]) * limit // max(_grade(grading, g), 1) + 1 for g in cone.generators))
        bounds.append(hi)
    candidates = []
    for point in _box_points(bounds, cone):
        grade = _grade(grading, point)
        if 0 < grade <= limit:
            candidates.append((grade, point))
    candidates.sort()
    hilbert: list[tuple[int, ...]] = []
    for grade, point in candidates:
        reducible = False
        for _, other in candidates:
            if other == point:
                continue
            diff = tuple(p - o for p, o in zip(point, other))
            if _grade(grading, diff) <= 0:
                continue
            if all(v == 0 for v in diff) or not cone.contains(diff):
                continue
            reducible = True
            break
        if not reducible:
            hilbert.append(point)
    return hilbert


def _grade(grading, vector) -> int:
    return sum(a * b for a, b in zip(grading, vector))


def _box_points(bounds: list[int], cone: ToricCone):
    d = len(bounds)
    # cones in the nonnegative orthant never need negative coordinates
    nonneg = all(all(v >= 0 for v in g) for g in cone.generators)

    def rec(prefix: tuple[int, ...]):
        if len(prefix) == d:
            if any(prefix) and cone.contains(prefix):
                yield prefix
            return
        i = len(prefix)
        lo = 0 if nonneg else -bounds[i]
        for v in range(lo, bounds[i] + 1):
            yield from rec(prefix + (v,))

    yield from rec(())


def cones_equal(first: ToricCone, second: ToricCone) -> bool:
    """Equality by double inclusion of generators, never by set comparison."""
    return (all(second.contains(g) for g in first.generators)
            and all(first.contains(g) for g in second.generators))
