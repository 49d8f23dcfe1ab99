"""Exact convex polytopes from vertex data.

A polytope is stored by its canonical vertex list together with the facet
inequalities and affine-hull equations that cut it out.  Inequalities are
`normal . x <= offset` with primitive integer normals; equations are
`normal . x == offset`.  For a polytope of affine dimension k in R^m there
are m - k equations, and the facets are facets relative to the affine hull.

Facet enumeration is brute force over point subsets spanning hyperplanes
inside the affine hull; inputs here are desk scale (tens of points,
dimension <= ~6), where this is fast and leaves no numerical doubt.

Volume is lattice-normalized: the volume form on the affine hull is scaled
so the smallest lattice simplex (with respect to Z^m intersected with the
direction space of the hull) has volume 1.  A point has volume 0.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .linalg import (
    ExactMatrix,
    Vector,
    as_vector,
    dot,
    d_subsets,
    int_det,
    integer_kernel,
    is_integral,
    kernel_of_rows,
    primitive_integer_vector,
    projection_matrix,
    rank_of_rows,
    solve_unique,
    vec_sub,
)

Facet = tuple[tuple[int, ...], Fraction]  # normal . x <= offset
Equation = tuple[tuple[int, ...], Fraction]  # normal . x == offset


class Polytope:
    """Canonicalized convex polytope over the rationals.

    Build instances with :func:`hull` or :func:`empty`; the constructor
    trusts its arguments.  Instances are immutable and hashable; equality
    compares ambient dimension and the sorted vertex list.
    """

    __slots__ = ("ambient_dim", "vertices", "facets", "equations",
                 "affine_dim", "_edges")

    def __init__(self, ambient_dim: int, vertices: tuple[Vector, ...],
                 facets: tuple[Facet, ...], equations: tuple[Equation, ...],
                 affine_dim: int):
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "facets", facets)
        object.__setattr__(self, "equations", equations)
        object.__setattr__(self, "affine_dim", affine_dim)
        object.__setattr__(self, "_edges", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polytope is immutable")

    @property
    def is_empty(self) -> bool:
        return self.affine_dim < 0

    def contains(self, point: Sequence) -> bool:
        if self.is_empty:
            return False
        p = as_vector(point)
        if len(p) != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        for normal, offset in self.equations:
            if dot(normal, p) != offset:
                return False
        for normal, offset in self.facets:
            if dot(normal, p) > offset:
                return False
        return True

    def __eq__(self, other) -> bool:
        return (isinstance(other, Polytope)
                and self.ambient_dim == other.ambient_dim
                and self.vertices == other.vertices)

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.vertices))

    def __repr__(self) -> str:
        if self.is_empty:
            return f"Polytope(empty in R^{self.ambient_dim})"
        return (f"Polytope(dim {self.affine_dim} in R^{self.ambient_dim}, "
                f"{len(self.vertices)} vertices)")


def empty(ambient_dim: int) -> Polytope:
    """The empty polytope, a distinguished value with affine_dim = -1."""
    return Polytope(ambient_dim, (), (), (), -1)


def hull(points: Iterable[Sequence], ambient_dim: int | None = None) -> Polytope:
    """Convex hull of a nonempty list of rational points.

    Duplicates and non-extremal points are dropped from the vertex list.
    """
    pts = sorted({as_vector(p) for p in points})
    if not pts:
        raise ValueError("hull of an empty point set (use empty())")
    m = len(pts[0])
    if ambient_dim is not None and ambient_dim != m:
        raise ValueError("ambient dimension mismatch")
    if any(len(p) != m for p in pts):
        raise ValueError("points of mixed dimension")

    base = pts[0]
    diffs = [vec_sub(p, base) for p in pts[1:]]
    affdim = rank_of_rows(diffs)

    equations: list[Equation] = []
    for ker in kernel_of_rows(diffs, m):
        normal = primitive_integer_vector(ker)
        equations.append((normal, dot(normal, base)))
    equations.sort()

    if affdim == 0:
        return Polytope(m, (base,), (), tuple(equations), 0)

    # Integerize once: point p becomes scale * p, so hyperplane data computed
    # from scaled differences applies to the original points after rescaling.
    scale = 1
    for p in pts:
        for x in p:
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
    ipts = [[int(x * scale) for x in p] for p in pts]
    eq_normals = [list(n) for n, _ in equations]

    facets: set[Facet] = set()
    npts = len(pts)
    for subset in itertools.combinations(range(npts), affdim):
        rows = [[a - b for a, b in zip(ipts[q], ipts[subset[0]])]
                for q in subset[1:]]
        rows.extend(eq_normals)
        # 1-dimensional kernel via the generalized cross product
        normal = []
        zero = True
        for j in range(m):
            minor_rows = [r[:j] + r[j + 1:] for r in rows]
            val = int_det(minor_rows)
            if j % 2:
                val = -val
            if val:
                zero = False
            normal.append(val)
        if zero:
            continue  # affinely dependent subset
        g = math.gcd(*normal)
        normal = tuple(x // g for x in normal)
        c_int = sum(a * b for a, b in zip(normal, ipts[subset[0]]))
        values = [sum(a * b for a, b in zip(normal, q)) for q in ipts]
        c = Fraction(c_int, scale)
        if all(v <= c_int for v in values):
            facets.add((normal, c))
        if all(v >= c_int for v in values):
            facets.add((tuple(-x for x in normal), -c))

    facet_list = sorted(facets)
    int_facets = [(n, c.numerator * (scale // c.denominator)) for n, c in facet_list]
    vertices = []
    eq_normal_rows = [as_vector(n) for n, _ in equations]
    for idx, p in enumerate(pts):
        active = [as_vector(n) for (n, ci), f in zip(int_facets, facet_list)
                  if sum(a * b for a, b in zip(n, ipts[idx])) == ci]
        active.extend(eq_normal_rows)
        if rank_of_rows(active) == m:
            vertices.append(p)
    return Polytope(m, tuple(vertices), tuple(facet_list), tuple(equations), affdim)


def edges(P: Polytope) -> list[tuple[int, int]]:
    """All 1-faces, as pairs of vertex indices, from facet incidence."""
    if P._edges is not None:
        return list(P._edges)
    result: list[tuple[int, int]] = []
    if P.affine_dim >= 1:
        m = P.ambient_dim
        eq_rows = [as_vector(n) for n, _ in P.equations]
        active_sets = []
        for v in P.vertices:
            active_sets.append({k for k, (n, c) in enumerate(P.facets)
                                if dot(n, v) == c})
        for i, j in itertools.combinations(range(len(P.vertices)), 2):
            common = active_sets[i] & active_sets[j]
            rows = [as_vector(P.facets[k][0]) for k in common] + eq_rows
            if rank_of_rows(rows) == m - 1:
                result.append((i, j))
    object.__setattr__(P, "_edges", tuple(result))
    return result


def edge_segments(P: Polytope) -> list[tuple[Vector, Vector]]:
    """Edges as (endpoint, endpoint) pairs, each pair sorted."""
    out = []
    for i, j in edges(P):
        a, b = P.vertices[i], P.vertices[j]
        out.append((a, b) if a <= b else (b, a))
    return out


def linear_image(mapping: ExactMatrix, P: Polytope) -> Polytope:
    """Image of P under a linear map (hull of the mapped vertices)."""
    if mapping.ncols != P.ambient_dim:
        raise ValueError("map columns must match the ambient dimension")
    if P.is_empty:
        return empty(mapping.nrows)
    return hull([mapping.apply(v) for v in P.vertices])


@lru_cache(maxsize=None)
def _direction_lattice(equations: tuple[Equation, ...], m: int) -> tuple[Vector, ...]:
    """Basis of Z^m intersected with the solution space of normal . x = 0."""
    if not equations:
        return tuple(tuple(Fraction(1 if i == j else 0) for j in range(m))
                     for i in range(m))
    rows = [list(n) for n, _ in equations]
    return tuple(tuple(Fraction(x) for x in b) for b in integer_kernel(rows))


def lattice_coordinates(P: Polytope) -> dict[Vector, tuple[int, ...]]:
    """Integer coordinates of the vertices in a lattice basis of the
    direction space of the affine hull, relative to the first vertex."""
    basis = _direction_lattice(P.equations, P.ambient_dim)
    r = len(basis)
    base = P.vertices[0]
    bt_rows = [[b[i] for b in basis] for i in range(P.ambient_dim)]
    coords = {}
    for v in P.vertices:
        c = solve_unique(bt_rows, vec_sub(v, base), r) if r else ()
        if c is None or not is_integral(c):
            raise ValueError("vertex outside the affine lattice")
        coords[v] = tuple(int(x) for x in c)
    return coords


@lru_cache(maxsize=None)
def _volume_simplices(P: Polytope) -> tuple[tuple[Vector, ...], ...]:
    """A triangulation of P (tuples of vertices), by pulling at a vertex."""
    if P.affine_dim <= 0:
        return ((P.vertices[0],),) if P.vertices else ()
    v0 = P.vertices[0]
    simplices = []
    for normal, c in P.facets:
        if dot(normal, v0) == c:
            continue
        face_points = [v for v in P.vertices if dot(normal, v) == c]
        face = hull(face_points)
        for s in _volume_simplices(face):
            simplices.append(s + (v0,))
    return tuple(simplices)


def normalized_volume(P: Polytope) -> int:
    """Lattice-normalized volume (unit lattice simplex has volume 1).

    Requires integer vertices; points (and the empty polytope) get 0.
    """
    if P.is_empty or P.affine_dim == 0:
        return 0
    for v in P.vertices:
        if not is_integral(v):
            raise ValueError("normalized volume needs integral vertices")
    coords = lattice_coordinates(P)
    total = 0
    for simplex in _volume_simplices(P):
        c0 = coords[simplex[0]]
        rows = [[a - b for a, b in zip(coords[v], c0)] for v in simplex[1:]]
        total += abs(int_det(rows))
    return total


def lattice_points(P: Polytope) -> list[tuple[int, ...]]:
    """All integer points in P, by bounding-box scan with exact membership."""
    if P.is_empty:
        return []
    m = P.ambient_dim
    lo = [_ceil(min(v[j] for v in P.vertices)) for j in range(m)]
    hi = [_floor(max(v[j] for v in P.vertices)) for j in range(m)]
    out = []
    for cand in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        p = tuple(Fraction(x) for x in cand)
        if all(dot(n, p) == c for n, c in P.equations) and \
           all(dot(n, p) <= c for n, c in P.facets):
            out.append(cand)
    return out


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def _scaled_row(normal: Sequence[int], offset: Fraction) -> tuple[list[int], int]:
    """Clear the denominator: normal . x (<=|==) offset, as integer data."""
    q = offset.denominator
    return [q * int(x) for x in normal], offset.numerator


def _int_constraints(P: Polytope):
    eqs = [_scaled_row(n, c) for n, c in P.equations]
    ineqs = [_scaled_row(n, c) for n, c in P.facets]
    return eqs, ineqs


def intersect(P: Polytope, Q: Polytope) -> Polytope:
    """Exact intersection; the empty polytope is a legitimate result.

    Vertices of the intersection are recovered by solving every square
    subsystem made of the affine-hull equations plus a complementary number
    of facet hyperplanes, then filtering by membership (all in integer
    arithmetic via Cramer's rule).
    """
    if P.ambient_dim != Q.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    m = P.ambient_dim
    if P.is_empty or Q.is_empty:
        return empty(m)

    eqs_p, ineqs_p = _int_constraints(P)
    eqs_q, ineqs_q = _int_constraints(Q)
    all_eqs = [e for e, _ in _dedupe_pairs(eqs_p + eqs_q)]
    all_eq_rhs = [r for _, r in _dedupe_pairs(eqs_p + eqs_q)]
    ineqs = _dedupe_pairs(ineqs_p + ineqs_q)

    # maximal independent subset of the equations
    star_rows: list[list[int]] = []
    star_rhs: list[int] = []
    for row, rhs in zip(all_eqs, all_eq_rhs):
        trial = star_rows + [row]
        if rank_of_rows([[Fraction(x) for x in r] for r in trial]) == len(trial):
            star_rows.append(row)
            star_rhs.append(rhs)
    t = m - len(star_rows)

    membership = [(eqs_p, ineqs_p), (eqs_q, ineqs_q)]

    def admissible(nums: tuple[int, ...], den: int) -> bool:
        for eqs, ineq in membership:
            for row, rhs in eqs:
                if sum(a * b for a, b in zip(row, nums)) != rhs * den:
                    return False
            for row, rhs in ineq:
                if sum(a * b for a, b in zip(row, nums)) > rhs * den:
                    return False
        return True

    candidates: set[Vector] = set()
    for chosen in itertools.combinations(range(len(ineqs)), t):
        rows = [list(r) for r in star_rows] + [list(ineqs[k][0]) for k in chosen]
        rhs = star_rhs + [ineqs[k][1] for k in chosen]
        D = int_det(rows)
        if D == 0:
            continue
        nums = []
        for col in range(m):
            repl = [r[:col] + [b] + r[col + 1:] for r, b in zip(rows, rhs)]
            nums.append(int_det(repl))
        if D < 0:
            D = -D
            nums = [-a for a in nums]
        if admissible(tuple(nums), D):
            candidates.add(tuple(Fraction(a, D) for a in nums))
    if not candidates:
        return empty(m)
    return hull(candidates)


def _dedupe_pairs(pairs):
    return list(dict.fromkeys((tuple(r), rhs) for r, rhs in pairs))


def face_of(F: Polytope, P: Polytope) -> bool:
    """True iff F is a face of P (the empty set and P itself count)."""
    if F.is_empty:
        return True
    if F.ambient_dim != P.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    if not all(P.contains(v) for v in F.vertices):
        return False
    tight = [(n, c) for n, c in P.facets
             if all(dot(n, v) == c for v in F.vertices)]
    cut = [v for v in P.vertices if all(dot(n, v) == c for n, c in tight)]
    return set(F.vertices) == set(cut)


def is_common_face(P: Polytope, Q: Polytope) -> bool:
    """True iff P and Q intersect in a face of both (possibly empty)."""
    R = intersect(P, Q)
    return face_of(R, P) and face_of(R, Q)


def hypersimplex(d: int, n: int) -> Polytope:
    """Integer points of the cube with coordinate sum d: the hull of the
    indicator vectors of all d-subsets of an n-set."""
    if not 0 <= d <= n:
        raise ValueError("need 0 <= d <= n")
    verts = []
    for A in d_subsets(n, d):
        verts.append(tuple(1 if j in A else 0 for j in range(n)))
    return hull(verts)


def projected_hypersimplex(d: int, caps: Sequence[int]) -> Polytope:
    """Image of the (d, sum caps) hypersimplex under the block-sum map."""
    return linear_image(projection_matrix(caps), hypersimplex(d, sum(caps)))
