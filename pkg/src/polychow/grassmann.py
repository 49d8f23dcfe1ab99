"""Pluecker vectors, supports, orbit polytopes, and block-structure maps.

A d-dimensional subspace of n-space, given as the row space of a full-rank
d x n rational matrix, has one Pluecker coordinate per d-subset of columns
(the maximal minor on those columns, taken in increasing order).  The
d-subsets with nonzero coordinate are the bases of the represented matroid;
pushing their indicator vectors through the block-sum map of a composition
of n gives the moment polytope of the subspace's diagonal-subtorus orbit.

Intersection with a coordinate subspace and projection away from a block of
coordinates are implemented at the matrix level.  Both are generic
operations: when the input is special enough that the expected dimension
drops, a GenericityError is raised instead of silently returning a
wrong-rank answer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import (ExactMatrix, block_columns, d_subsets, lattice_index,
                     projection_matrix, vec_sub)
from .polymatroid import Matroid
from . import polytope as pt


class GenericityError(ValueError):
    """The input is outside the generic locus the operation assumes."""


@dataclass(frozen=True)
class PluckerVector:
    """Maximal minors of a d x n matrix, indexed by d-subsets of columns."""

    d: int
    n: int
    coords: tuple[tuple[tuple[int, ...], Fraction], ...]

    def coefficient(self, subset: Sequence[int]) -> Fraction:
        key = tuple(subset)
        for s, v in self.coords:
            if s == key:
                return v
        raise KeyError(f"not a {self.d}-subset of range({self.n}): {key}")

    def as_dict(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self.coords)

    def support(self) -> frozenset[tuple[int, ...]]:
        return frozenset(s for s, v in self.coords if v != 0)


def plucker(M: ExactMatrix) -> PluckerVector:
    """All maximal minors, columns taken in increasing order."""
    d, n = M.shape
    if M.rank() != d:
        raise ValueError("matrix does not have full row rank")
    rows = tuple(range(d))
    coords = tuple((A, M.minor(rows, A)) for A in d_subsets(n, d))
    return PluckerVector(d, n, coords)


def support_matroid(p: PluckerVector) -> Matroid:
    return Matroid(p.n, p.d, p.support())


def orbit_polytope(M: ExactMatrix, caps: Sequence[int]) -> pt.Polytope:
    """Moment polytope of the block-torus orbit: the hull of the block-count
    images of the nonzero Pluecker positions."""
    caps = tuple(int(r) for r in caps)
    d, n = M.shape
    if sum(caps) != n:
        raise ValueError("block sizes must sum to the number of columns")
    lam = projection_matrix(caps)
    points = [lam.apply(tuple(1 if j in A else 0 for j in range(n)))
              for A in plucker(M).support()]
    return pt.hull(points)


def gamma_face(d: int, n: int, subset: Sequence[int], sign: str) -> pt.Polytope:
    """The face of the hypersimplex of d-subsets pinned by a coordinate set:
    '+' keeps the subsets containing it, '-' the subsets avoiding it."""
    I = set(int(i) for i in subset)
    if any(i < 0 or i >= n for i in I):
        raise ValueError("index out of range")
    if sign == "+":
        chosen = [A for A in d_subsets(n, d) if I <= set(A)]
    elif sign == "-":
        chosen = [A for A in d_subsets(n, d) if not I & set(A)]
    else:
        raise ValueError("sign must be '+' or '-'")
    if not chosen:
        raise ValueError("empty face: no admissible subsets")
    return pt.hull([tuple(1 if j in A else 0 for j in range(n)) for A in chosen])


def intersect_with_coordinate_subspace(M: ExactMatrix,
                                       subset: Sequence[int]) -> ExactMatrix:
    """Row-space basis of L intersected with {x_j = 0 : j in subset}, with
    the pinned columns dropped.  Expects the generic dimension d - |subset|.
    """
    I = sorted(set(int(i) for i in subset))
    d, n = M.shape
    if any(i < 0 or i >= n for i in I):
        raise ValueError("index out of range")
    if not I:
        return M
    coeffs = M.select_columns(I).transpose().kernel_basis()
    if len(coeffs) != d - len(I):
        raise GenericityError(
            f"intersection has dimension {len(coeffs)}, expected {d - len(I)}")
    keep = [j for j in range(n) if j not in set(I)]
    rows = []
    for c in coeffs:
        full = [sum(c[k] * M.entries[k][j] for k in range(d)) for j in keep]
        rows.append(full)
    return ExactMatrix(rows)


def project_away(M: ExactMatrix, subset: Sequence[int]) -> ExactMatrix:
    """Delete the columns in subset; the rank must survive."""
    I = sorted(set(int(i) for i in subset))
    d, n = M.shape
    if any(i < 0 or i >= n for i in I):
        raise ValueError("index out of range")
    result = M.delete_columns(I)
    if result.rank() != d:
        raise GenericityError("projection drops the rank")
    return result


def gale_dual(M: ExactMatrix) -> ExactMatrix:
    """Basis of the orthogonal complement of the row space, as rows."""
    d, n = M.shape
    if M.rank() != d:
        raise ValueError("matrix does not have full row rank")
    return ExactMatrix(M.kernel_basis())


def decomposition_check(cells: Sequence[pt.Polytope],
                        target: pt.Polytope) -> bool:
    """True iff the cells tile the target: pairwise common faces, each cell
    inside the target, and volumes adding up to the target's volume."""
    if any(c.ambient_dim != target.ambient_dim for c in cells):
        raise ValueError("ambient dimension mismatch")
    for c in cells:
        if not all(target.contains(v) for v in c.vertices):
            return False
    for a, b in itertools.combinations(cells, 2):
        if not pt.is_common_face(a, b):
            return False
    return sum(pt.normalized_volume(c) for c in cells) == pt.normalized_volume(target)


def multiplicity_index(M: ExactMatrix, caps: Sequence[int]):
    """Index of the lattice spanned by the block-count images of the support
    bases inside the lattice spanned by the images of all d-subsets
    (both taken as difference lattices).

    Returns 1 for every full orbit; math.inf flags a degenerate input whose
    image differences span a smaller subspace.
    """
    caps = tuple(int(r) for r in caps)
    d, n = M.shape
    if sum(caps) != n:
        raise ValueError("block sizes must sum to the number of columns")
    lam = projection_matrix(caps)

    def image(A):
        return tuple(int(x) for x in
                     lam.apply(tuple(1 if j in A else 0 for j in range(n))))

    support = sorted(plucker(M).support())
    sub_pts = [image(A) for A in support]
    amb_pts = [image(A) for A in d_subsets(n, d)]
    gens = [vec_sub(p, sub_pts[0]) for p in sub_pts[1:]]
    ambient = [vec_sub(p, amb_pts[0]) for p in amb_pts[1:]]
    return lattice_index(gens, ambient)


def volume_identity_check(d: int, n: int, caps: Sequence[int], i: int,
                          sign: str = "+") -> bool:
    """Compare the volume of the projected pinned face for block i with the
    volume of the projected hypersimplex of the reduced parameters.

    '+' pins the block to ones and compares with (d - r_i, n - r_i);
    '-' pins it to zeros and compares with (d, n - r_i).  Raises ValueError
    when the face is empty (degenerate parameters).
    """
    caps = tuple(int(r) for r in caps)
    if sum(caps) != n:
        raise ValueError("block sizes must sum to n")
    if not 0 <= i < len(caps):
        raise IndexError("block index out of range")
    r_i = caps[i]
    I = block_columns(caps, i)
    if sign == "+" and r_i > d:
        raise ValueError("degenerate: block larger than the rank")
    if sign == "-" and d > n - r_i:
        raise ValueError("degenerate: rank exceeds the remaining columns")
    face = gamma_face(d, n, I, sign)
    left = pt.normalized_volume(pt.linear_image(projection_matrix(caps), face))
    rest = caps[:i] + caps[i + 1:]
    d_small = d - r_i if sign == "+" else d
    right = pt.normalized_volume(pt.projected_hypersimplex(d_small, rest)) \
        if rest else 0
    return left == right


def block_scaling(caps: Sequence[int], scales: Sequence) -> ExactMatrix:
    """Diagonal matrix rescaling each consecutive block by one scalar."""
    if len(scales) != len(caps):
        raise ValueError("one scale per block expected")
    diag = []
    for r, s in zip(caps, scales):
        diag.extend([s] * r)
    n = len(diag)
    return ExactMatrix([[diag[i] if i == j else 0 for j in range(n)]
                        for i in range(n)])


def gm_invariance_report(M: ExactMatrix, caps: Sequence[int],
                         g: ExactMatrix, scales: Sequence) -> bool:
    """Orbit-polytope invariance under basis change and block rescaling:
    the combinatorial shadow of quotienting by the two commuting actions."""
    caps = tuple(int(r) for r in caps)
    d, n = M.shape
    if g.shape != (d, d):
        raise ValueError("basis change must be d x d")
    if g.det() == 0:
        raise ValueError("singular basis change")
    if any(Fraction(s) == 0 for s in scales):
        raise ValueError("zero block scale")
    moved = g @ M @ block_scaling(caps, scales)
    return orbit_polytope(moved, caps) == orbit_polytope(M, caps)
