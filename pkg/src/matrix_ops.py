# src/matrix_ops.py
"""
Matrices over the groupoid algebra.

Sizes are aligned the usual way: an idempotent x is identified with x ⊞ 0, and an
invertible u with u ⊞ 1. All predicates take a Mode; MOD_COMPACT compares entries
with quotient_equal, i.e. in the quantum sphere (or projective space) rather than
in the Toeplitz cube.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from src.cone_sets import ExtNat
from src.errors import DimensionMismatch, NotAProjection, NotInvertible, ParseError
from src.groupoid_algebra import (
    AlgebraElement,
    adjoint,
    convolve,
    identity,
    in_compact_ideal,
    is_degree_zero,
    quotient_equal,
    restrict_sigma,
    trace,
    trace_to_rank,
    zero,
)
from src.gaussian import GaussianRational


class Mode(str, Enum):
    EXACT = "exact"
    MOD_COMPACT = "mod_compact_ideal"


@dataclass(frozen=True)
class AlgMatrix:
    n: int
    rows: int
    cols: int
    entries: Tuple[Tuple[AlgebraElement, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch(f"entry grid does not match {self.rows}×{self.cols}")
        if any(e.n != self.n for r in self.entries for e in r):
            raise DimensionMismatch("matrix entries have different ambients")

    @classmethod
    def of(cls, rows: Sequence[Sequence[AlgebraElement]]) -> "AlgMatrix":
        grid = tuple(tuple(r) for r in rows)
        if not grid or not grid[0]:
            raise DimensionMismatch("empty matrix")
        return cls(grid[0][0].n, len(grid), len(grid[0]), grid)

    @classmethod
    def scalar(cls, f: AlgebraElement) -> "AlgMatrix":
        return cls(f.n, 1, 1, ((f,),))

    def __getitem__(self, index: Tuple[int, int]) -> AlgebraElement:
        i, j = index
        return self.entries[i][j]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __mul__(self, other: "AlgMatrix") -> "AlgMatrix":
        return mat_mul(self, other)

    def __add__(self, other: "AlgMatrix") -> "AlgMatrix":
        return mat_add(self, other)

    def __sub__(self, other: "AlgMatrix") -> "AlgMatrix":
        return mat_add(self, other.map(lambda e: -e))

    def map(self, fn) -> "AlgMatrix":
        return AlgMatrix(self.n, self.rows, self.cols, tuple(tuple(fn(e) for e in r) for r in self.entries))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[e.to_json() for e in r] for r in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict) -> "AlgMatrix":
        try:
            grid = [[AlgebraElement.from_json(e) for e in r] for r in data["entries"]]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad matrix: {exc}") from exc
        return cls.of(grid)

    def __str__(self) -> str:
        return format_matrix(self)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def zero_matrix(n: int, rows: int, cols: Optional[int] = None) -> AlgMatrix:
    cols = rows if cols is None else cols
    z = zero(n)
    return AlgMatrix(n, rows, cols, tuple((z,) * cols for _ in range(rows)))


def identity_matrix(n: int, size: int) -> AlgMatrix:
    one, z = identity(n), zero(n)
    return AlgMatrix(n, size, size, tuple(
        tuple(one if i == j else z for j in range(size)) for i in range(size)
    ))


def diag(*blocks) -> AlgMatrix:
    """Block-diagonal matrix from AlgebraElements and/or AlgMatrices."""
    mats = [b if isinstance(b, AlgMatrix) else AlgMatrix.scalar(b) for b in blocks]
    if not mats:
        raise DimensionMismatch("diag of nothing")
    out = mats[0]
    for m in mats[1:]:
        out = dsum(out, m)
    return out


def embed_2x2(w: AlgMatrix, size: int, a: int, b: int) -> AlgMatrix:
    """Identity of the given size with w placed on rows/cols (a, b)."""
    if w.rows != 2 or w.cols != 2 or a == b or not (0 <= a < size and 0 <= b < size):
        raise DimensionMismatch(f"cannot embed a {w.rows}×{w.cols} block at ({a},{b}) of {size}")
    grid = [list(r) for r in identity_matrix(w.n, size).entries]
    for (i, p) in ((0, a), (1, b)):
        for (j, q) in ((0, a), (1, b)):
            grid[p][q] = w[i, j]
    return AlgMatrix.of(grid)


def pad(a: AlgMatrix, size: int, fill_identity: bool = False) -> AlgMatrix:
    """a ⊞ 0 (or a ⊞ 1) up to a size×size matrix."""
    if a.rows == size and a.cols == size:
        return a
    if a.rows > size or a.cols > size:
        raise DimensionMismatch(f"cannot pad {a.rows}×{a.cols} down to {size}")
    rest = size - max(a.rows, a.cols)
    if a.rows != a.cols:
        raise DimensionMismatch("only square matrices are padded")
    filler = identity_matrix(a.n, rest) if fill_identity else zero_matrix(a.n, rest)
    return dsum(a, filler)


# ---------------------------------------------------------------------------
# ring operations
# ---------------------------------------------------------------------------

def mat_mul(a: AlgMatrix, b: AlgMatrix) -> AlgMatrix:
    if a.cols != b.rows or a.n != b.n:
        raise DimensionMismatch(f"cannot multiply {a.rows}×{a.cols} by {b.rows}×{b.cols}")
    grid = []
    for i in range(a.rows):
        row = []
        for j in range(b.cols):
            total = zero(a.n)
            for k in range(a.cols):
                if a[i, k].is_zero() or b[k, j].is_zero():
                    continue
                total = total + convolve(a[i, k], b[k, j])
            row.append(total)
        grid.append(row)
    return AlgMatrix(a.n, a.rows, b.cols, tuple(tuple(r) for r in grid))


def mat_add(a: AlgMatrix, b: AlgMatrix) -> AlgMatrix:
    if (a.rows, a.cols, a.n) != (b.rows, b.cols, b.n):
        raise DimensionMismatch(f"cannot add {a.rows}×{a.cols} and {b.rows}×{b.cols}")
    return AlgMatrix(a.n, a.rows, a.cols, tuple(
        tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a.entries, b.entries)
    ))


def mat_adjoint(a: AlgMatrix) -> AlgMatrix:
    return AlgMatrix(a.n, a.cols, a.rows, tuple(
        tuple(adjoint(a[i, j]) for i in range(a.rows)) for j in range(a.cols)
    ))


def dsum(a: AlgMatrix, b: AlgMatrix) -> AlgMatrix:
    if a.n != b.n:
        raise DimensionMismatch(f"ambient mismatch: {a.n} vs {b.n}")
    z = zero(a.n)
    top = [tuple(r) + (z,) * b.cols for r in a.entries]
    bottom = [(z,) * a.cols + tuple(r) for r in b.entries]
    return AlgMatrix(a.n, a.rows + b.rows, a.cols + b.cols, tuple(top + bottom))


def mat_trace(a: AlgMatrix):
    total = GaussianRational()
    for i in range(min(a.rows, a.cols)):
        t = trace(a[i, i])
        if isinstance(t, ExtNat):
            return t
        total = total + t
    return total


# ---------------------------------------------------------------------------
# equality and predicates
# ---------------------------------------------------------------------------

def _aligned(a: AlgMatrix, b: AlgMatrix) -> Tuple[AlgMatrix, AlgMatrix]:
    if a.is_square and b.is_square and a.rows != b.rows:
        size = max(a.rows, b.rows)
        return pad(a, size), pad(b, size)
    return a, b


def _entry_equal(x: AlgebraElement, y: AlgebraElement, mode: Mode) -> bool:
    return x == y if mode == Mode.EXACT else quotient_equal(x, y)


def first_difference(a: AlgMatrix, b: AlgMatrix, mode: Mode = Mode.EXACT) -> Optional[dict]:
    """The first entry where a and b differ, as a counterexample record."""
    a, b = _aligned(a, b)
    if (a.rows, a.cols) != (b.rows, b.cols):
        return {"shape": [[a.rows, a.cols], [b.rows, b.cols]]}
    for i in range(a.rows):
        for j in range(a.cols):
            if not _entry_equal(a[i, j], b[i, j], mode):
                return {"row": i, "col": j, "difference": (a[i, j] - b[i, j]).to_json()}
    return None


def equal(a: AlgMatrix, b: AlgMatrix, mode: Mode = Mode.EXACT) -> bool:
    return first_difference(a, b, mode) is None


def is_idempotent(a: AlgMatrix, mode: Mode = Mode.EXACT) -> bool:
    return a.is_square and equal(a * a, a, mode)


def is_self_adjoint(a: AlgMatrix, mode: Mode = Mode.EXACT) -> bool:
    return a.is_square and equal(mat_adjoint(a), a, mode)


def is_projection(a: AlgMatrix, mode: Mode = Mode.EXACT) -> bool:
    return is_self_adjoint(a, mode) and is_idempotent(a, mode)


def is_unitary(a: AlgMatrix, mode: Mode = Mode.EXACT) -> bool:
    if not a.is_square:
        return False
    one = identity_matrix(a.n, a.rows)
    star = mat_adjoint(a)
    return equal(a * star, one, mode) and equal(star * a, one, mode)


def is_partial_isometry(a: AlgMatrix, mode: Mode = Mode.EXACT) -> bool:
    return equal(a * mat_adjoint(a) * a, a, mode)


def matrix_is_degree_zero(a: AlgMatrix) -> bool:
    return all(is_degree_zero(e) for r in a.entries for e in r)


def matrix_in_compact_ideal(a: AlgMatrix) -> bool:
    return all(in_compact_ideal(e) for r in a.entries for e in r)


# ---------------------------------------------------------------------------
# conjugation
# ---------------------------------------------------------------------------

def conjugate(
    u: AlgMatrix,
    p: AlgMatrix,
    mode: Mode = Mode.EXACT,
    inverse: Optional[AlgMatrix] = None,
) -> AlgMatrix:
    """u p u⁻¹, with u⁻¹ = u* unless an explicit two-sided inverse is supplied."""
    if not u.is_square or not p.is_square:
        raise DimensionMismatch("conjugation needs square matrices")
    size = max(u.rows, p.rows)
    u = pad(u, size, fill_identity=True)
    p = pad(p, size)
    if inverse is None:
        if not is_unitary(u, mode):
            raise NotInvertible(f"witness is not unitary ({mode.value})")
        inverse = mat_adjoint(u)
    else:
        inverse = pad(inverse, size, fill_identity=True)
        one = identity_matrix(u.n, size)
        if not (equal(u * inverse, one, mode) and equal(inverse * u, one, mode)):
            raise NotInvertible(f"supplied inverse is not two-sided ({mode.value})")
    return u * p * inverse


def verify_equivalence(
    p: AlgMatrix,
    q: AlgMatrix,
    witness: AlgMatrix,
    mode: Mode = Mode.EXACT,
    inverse: Optional[AlgMatrix] = None,
) -> bool:
    try:
        image = conjugate(witness, p, mode, inverse)
    except NotInvertible:
        return False
    return equal(image, q, mode)


# ---------------------------------------------------------------------------
# ranks
# ---------------------------------------------------------------------------

def matrix_rank(p: AlgMatrix) -> ExtNat:
    """Operator rank of a projection matrix, read off as its trace."""
    if not is_projection(p):
        raise NotAProjection("matrix is not a projection")
    return trace_to_rank(mat_trace(p))


def restrict_at_one(a: AlgMatrix, A: Sequence[int]) -> AlgMatrix:
    """Entrywise σ-restriction to the face A, evaluated at z = 1."""
    return a.map(lambda e: restrict_sigma(e, A).at_one())


def rank_at(p: AlgMatrix, A: Sequence[int]) -> ExtNat:
    """Rank of the σ-restriction of a projection at the face A (z = 1)."""
    return trace_to_rank(mat_trace(restrict_at_one(p, A)))


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

def format_matrix(a: AlgMatrix) -> str:
    cells: List[List[str]] = [[str(e) for e in r] for r in a.entries]
    width = max(len(c) for r in cells for c in r)
    return "\n".join("[ " + "  ".join(c.ljust(width) for c in r) + " ]" for r in cells)
