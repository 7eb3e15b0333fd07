"""JSON wire formats: rationals as "p/q" strings, matrices as nested lists.

No floating point appears anywhere; parsing rejects it.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ShapeError
from .groups import Character, ParabolicShape
from .linalg import Matrix, Polynomial, rational
from .quiver import MorphismDatum
from .semiinv import SemiInvariantDatum


def rational_to_str(value: Fraction) -> str:
    return str(value)


def rational_from_json(value) -> Fraction:
    if isinstance(value, float):
        raise ShapeError("floating-point input is not accepted; use 'p/q' strings")
    return rational(value)


def matrix_to_json(m: Matrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in m.entries]


def matrix_from_json(data) -> Matrix:
    if not isinstance(data, list):
        raise ShapeError("a matrix is a JSON list of rows")
    rows = [[rational_from_json(x) for x in row] for row in data]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ShapeError("ragged matrix rows")
    return Matrix.from_rows(rows)


def shape_to_json(shape: ParabolicShape) -> dict:
    return {"n": shape.n, "blocks": list(shape.blocks)}


def shape_from_json(data) -> ParabolicShape:
    return ParabolicShape(int(data["n"]), tuple(int(b) for b in data["blocks"]))


def character_to_json(chi: Character) -> list[int]:
    return list(chi.coords)


def character_from_json(data) -> Character:
    return Character(tuple(int(c) for c in data))


def polynomial_to_json(p: Polynomial) -> list[str]:
    return [str(c) for c in p.coeffs]


def polynomial_from_json(data) -> Polynomial:
    return Polynomial(tuple(rational_from_json(c) for c in data))


def datum_to_json(datum: SemiInvariantDatum) -> dict:
    return {
        "row_blocks": list(datum.row_blocks),
        "col_blocks": list(datum.col_blocks),
        "polys": [[polynomial_to_json(p) for p in row] for row in datum.polys],
    }


def datum_from_json(data) -> SemiInvariantDatum:
    polys = tuple(tuple(polynomial_from_json(p) for p in row) for row in data["polys"])
    return SemiInvariantDatum(tuple(int(a) for a in data["row_blocks"]),
                              tuple(int(a) for a in data["col_blocks"]),
                              polys)


def morphism_to_json(phi: MorphismDatum) -> dict:
    blocks = []
    n = phi.n
    for i in range(n):
        for j in range(n):
            block = phi.blocks[i][j]
            if block is None:
                continue
            if i + 1 == n:
                entries = [[[str(c) for c in seq] for seq in row] for row in block]
            else:
                entries = [[str(c) for c in row] for row in block]
            blocks.append({"target": i + 1, "source": j + 1, "entries": entries})
    return {"x": list(phi.x), "y": list(phi.y), "blocks": blocks}


def morphism_from_json(data) -> MorphismDatum:
    x = tuple(int(v) for v in data["x"])
    y = tuple(int(v) for v in data["y"])
    n = len(x)
    grid: list[list[object]] = [[None] * n for _ in range(n)]
    for item in data.get("blocks", []):
        i = int(item["target"]) - 1
        j = int(item["source"]) - 1
        entries = item["entries"]
        if i + 1 == n:
            block = tuple(tuple(tuple(rational_from_json(c) for c in seq) for seq in row)
                          for row in entries)
        else:
            block = tuple(tuple(rational_from_json(c) for c in row) for row in entries)
        grid[i][j] = block
    return MorphismDatum(x, y, tuple(tuple(row) for row in grid))
