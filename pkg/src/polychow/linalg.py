"""Exact rational linear algebra over arbitrary-precision fractions.

Everything in this package runs on `fractions.Fraction`; no floating point
is used anywhere.  This module provides the small dense matrix type and the
handful of exact kernels the rest of the package needs: row reduction,
determinants/minors, null spaces, integer lattice bases, Smith-style
diagonalization, and lattice indices.

Sizes are desk scale (dimensions <= ~20), so the algorithms are the
straightforward exact ones.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]

INFINITE = math.inf


def frac(x) -> Fraction:
    """Coerce an int, string like '3/4', or Fraction to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point input rejected; use int/str/Fraction")
    return Fraction(x)


def as_vector(v: Iterable) -> Vector:
    return tuple(frac(x) for x in v)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def vec_sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_scale(c: Fraction, u: Sequence[Fraction]) -> Vector:
    return tuple(c * a for a in u)


def is_integral(v: Sequence[Fraction]) -> bool:
    return all(x.denominator == 1 for x in v)


def primitive_integer_vector(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a nonzero rational vector to a primitive integer vector.

    The direction is preserved (positive multiple); the result has gcd 1.
    """
    denoms = [x.denominator for x in v]
    scale = math.lcm(*denoms) if denoms else 1
    ints = [int(x * scale) for x in v]
    g = math.gcd(*ints)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in ints)


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form. Returns (new rows, pivot column indices)."""
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat, pivots


def rank_of_rows(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(rows)[1])


def kernel_of_rows(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[Vector]:
    """Basis of {x : row . x = 0 for every row}, by back substitution."""
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis: list[Vector] = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for i, p in enumerate(pivots):
            vec[p] = -red[i][f]
        basis.append(tuple(vec))
    return basis


def solve_unique(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction],
                 ncols: int) -> Vector | None:
    """Solve row_i . x = rhs_i; return the solution iff it exists and is unique."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if ncols in pivots:  # pivot in the augmented column: inconsistent
        return None
    if len(pivots) < ncols:
        return None
    sol = [Fraction(0)] * ncols
    for i, p in enumerate(pivots):
        sol[p] = red[i][ncols]
    return tuple(sol)


def solve_any(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction],
              ncols: int) -> Vector | None:
    """One solution of a consistent system, or None if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    sol = [Fraction(0)] * ncols
    for i, p in enumerate(pivots):
        sol[p] = red[i][ncols]
    return tuple(sol)


class ExactMatrix:
    """Immutable dense matrix of exact rationals."""

    __slots__ = ("entries", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable]):
        ent = tuple(tuple(frac(x) for x in row) for row in rows)
        if ent and any(len(r) != len(ent[0]) for r in ent):
            raise ValueError("ragged rows")
        object.__setattr__(self, "entries", ent)
        object.__setattr__(self, "nrows", len(ent))
        object.__setattr__(self, "ncols", len(ent[0]) if ent else 0)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(zip(*self.entries)) if self.entries else ExactMatrix([])

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.entries))
        return ExactMatrix([[dot(r, c) for c in cols] for r in self.entries])

    def apply(self, v: Sequence) -> Vector:
        """Matrix times column vector."""
        vv = as_vector(v)
        if len(vv) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(dot(r, vv) for r in self.entries)

    def select_columns(self, cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix([[r[j] for j in cols] for r in self.entries])

    def delete_columns(self, cols: Iterable[int]) -> "ExactMatrix":
        drop = set(cols)
        keep = [j for j in range(self.ncols) if j not in drop]
        return self.select_columns(keep)

    def rank(self) -> int:
        return rank_of_rows(self.entries)

    def det(self) -> Fraction:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        mat = [list(r) for r in self.entries]
        n = self.nrows
        result = Fraction(1)
        for c in range(n):
            pivot = next((i for i in range(c, n) if mat[i][c] != 0), None)
            if pivot is None:
                return Fraction(0)
            if pivot != c:
                mat[c], mat[pivot] = mat[pivot], mat[c]
                result = -result
            result *= mat[c][c]
            inv = 1 / mat[c][c]
            for i in range(c + 1, n):
                if mat[i][c] != 0:
                    f = mat[i][c] * inv
                    mat[i] = [a - f * b for a, b in zip(mat[i], mat[c])]
        return result

    def minor(self, rows: Sequence[int], cols: Sequence[int]) -> Fraction:
        """Determinant of the submatrix on `rows` x `cols` (taken in the given
        order; increasing order is the canonical sign convention)."""
        if len(rows) != len(cols):
            raise ValueError("minor needs equally many rows and columns")
        sub = ExactMatrix([[self.entries[i][j] for j in cols] for i in rows])
        return sub.det()

    def kernel_basis(self) -> list[Vector]:
        """Basis of the right null space; empty list when trivial."""
        return kernel_of_rows(self.entries, self.ncols)

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]

    def __eq__(self, other) -> bool:
        return isinstance(other, ExactMatrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.entries)
        return f"ExactMatrix[{self.nrows}x{self.ncols}: {body}]"


def projection_matrix(caps: Sequence[int]) -> ExactMatrix:
    """The block-sum map R^n -> R^m collapsing consecutive blocks of sizes
    caps = (r_1, ..., r_m); row i is the indicator of block i."""
    if any(r < 0 for r in caps):
        raise ValueError("block sizes must be nonnegative")
    n = sum(caps)
    rows = []
    start = 0
    for r in caps:
        rows.append([1 if start <= j < start + r else 0 for j in range(n)])
        start += r
    return ExactMatrix(rows) if rows else ExactMatrix([[]])


def block_columns(caps: Sequence[int], i: int) -> tuple[int, ...]:
    """Column indices of block i (0-based) for block sizes caps."""
    if not 0 <= i < len(caps):
        raise IndexError("block index out of range")
    start = sum(caps[:i])
    return tuple(range(start, start + caps[i]))


def d_subsets(n: int, d: int) -> list[tuple[int, ...]]:
    """All d-element subsets of range(n) in lexicographic order."""
    return list(itertools.combinations(range(n), d))


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    mat = [[int(x) for x in r] for r in rows]
    n = len(mat)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if mat[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if mat[i][k] != 0), None)
            if pivot is None:
                return 0
            mat[k], mat[pivot] = mat[pivot], mat[k]
            sign = -sign
        akk = mat[k][k]
        for i in range(k + 1, n):
            aik = mat[i][k]
            row_i = mat[i]
            row_k = mat[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * mat[n - 1][n - 1]


# ---------------------------------------------------------------------------
# integer lattices
# ---------------------------------------------------------------------------

def _as_int_rows(vectors: Iterable[Sequence]) -> list[list[int]]:
    rows = []
    for v in vectors:
        row = []
        for x in v:
            f = frac(x)
            if f.denominator != 1:
                raise ValueError("integer vector expected")
            row.append(int(f))
        rows.append(row)
    return rows


def lattice_basis(vectors: Iterable[Sequence]) -> list[tuple[int, ...]]:
    """Row-echelon basis of the integer lattice generated by the vectors.

    Uses only unimodular row operations, so the lattice is preserved.
    """
    mat = _as_int_rows(vectors)
    if not mat:
        return []
    ncols = len(mat[0])
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(mat)) if mat[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(mat[i][c]))
            mat[r], mat[i0] = mat[i0], mat[r]
            done = True
            for i in range(r + 1, len(mat)):
                if mat[i][c] != 0:
                    q = mat[i][c] // mat[r][c]
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
                    if mat[i][c] != 0:
                        done = False
            if done:
                break
        if any(mat[i][c] != 0 for i in range(r, len(mat))):
            if mat[r][c] < 0:
                mat[r] = [-x for x in mat[r]]
            r += 1
            if r == len(mat):
                break
    return [tuple(row) for row in mat[:r]]


def smith_diagonalize(matrix: Sequence[Sequence[int]]):
    """Diagonalize an integer matrix by unimodular row/column operations.

    Returns (diag, col_ops) where diag is the diagonalized matrix (as lists)
    and col_ops is the accumulated unimodular column transform V with
    A . V congruent to the diagonal shape (rows transformed in place).
    The diagonal entries need not form a divisibility chain; their product
    and the zero pattern are the invariants used here.
    """
    A = [list(r) for r in matrix]
    nrows = len(A)
    ncols = len(A[0]) if A else 0
    V = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def col_addmul(dst: int, src: int, q: int):
        for i in range(nrows):
            A[i][dst] -= q * A[i][src]
        for i in range(ncols):
            V[i][dst] -= q * V[i][src]

    def col_swap(a: int, b: int):
        for i in range(nrows):
            A[i][a], A[i][b] = A[i][b], A[i][a]
        for i in range(ncols):
            V[i][a], V[i][b] = V[i][b], V[i][a]

    t = 0
    while t < min(nrows, ncols):
        pivots = [(abs(A[i][j]), i, j) for i in range(t, nrows)
                  for j in range(t, ncols) if A[i][j] != 0]
        if not pivots:
            break
        _, pi, pj = min(pivots)
        A[t], A[pi] = A[pi], A[t]
        if pj != t:
            col_swap(t, pj)
        while True:
            for i in range(t + 1, nrows):
                if A[i][t] != 0:
                    q = A[i][t] // A[t][t]
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
            for j in range(t + 1, ncols):
                if A[t][j] != 0:
                    col_addmul(j, t, A[t][j] // A[t][t])
            resid = [(abs(A[i][t]), i, t) for i in range(t + 1, nrows) if A[i][t] != 0]
            resid += [(abs(A[t][j]), t, j) for j in range(t + 1, ncols) if A[t][j] != 0]
            if not resid:
                break
            _, ri, rj = min(resid)
            if ri != t:
                A[t], A[ri] = A[ri], A[t]
            else:
                col_swap(t, rj)
        t += 1
    return A, V


def integer_kernel(matrix: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Basis of {x in Z^n : A x = 0}. The result generates the full
    (saturated) kernel lattice."""
    rows = _as_int_rows(matrix)
    if not rows:
        return []
    ncols = len(rows[0])
    diag, V = smith_diagonalize(rows)
    nonzero = {j for j in range(min(len(diag), ncols)) if diag[j][j] != 0}
    basis = []
    for j in range(ncols):
        if j not in nonzero:
            basis.append(tuple(V[i][j] for i in range(ncols)))
    return basis


def lattice_index(gens: Iterable[Sequence], ambient_gens: Iterable[Sequence]):
    """Index of the lattice generated by `gens` inside the lattice generated
    by `ambient_gens`.

    Returns a positive int, or math.inf when the spans have different ranks.
    Raises ValueError when the first lattice is not contained in the second.
    """
    sub = _as_int_rows(gens)
    amb = _as_int_rows(ambient_gens)
    basis = lattice_basis(amb)
    ra = len(basis)
    if not sub:
        return 1 if ra == 0 else INFINITE
    ncols = len(sub[0])
    if basis and len(basis[0]) != ncols:
        raise ValueError("ambient dimension mismatch")
    bt_rows = [[Fraction(b[i]) for b in basis] for i in range(ncols)]
    coords = []
    for g in sub:
        c = solve_any(bt_rows, [Fraction(x) for x in g], ra)
        if c is None:
            raise ValueError("generator outside the span of the ambient lattice")
        if not is_integral(c):
            raise ValueError("generated lattice is not contained in the ambient lattice")
        coords.append([int(x) for x in c])
    if ra == 0:
        return 1
    if rank_of_rows([[Fraction(x) for x in c] for c in coords]) < ra:
        return INFINITE
    diag, _ = smith_diagonalize(coords)
    index = 1
    for j in range(ra):
        index *= abs(diag[j][j])
    return index
