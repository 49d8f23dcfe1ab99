"""Matroids on index sets and discrete polymatroids on multisets.

A discrete polymatroid is a nonempty finite set of nonnegative integer
vectors of a common modulus (its rank) satisfying the vector exchange
axiom: whenever u_i > v_i there is some j with u_j < v_j and
u - e_i + e_j again in the set.  Equivalently it is a matroid whose ground
multiset repeats element i with multiplicity caps[i].

The bridge between the two worlds is the block-count map: a subset A of
range(n) maps to the vector counting how many members of A fall in each of
the consecutive blocks of sizes caps = (r_1, ..., r_m).  Projecting a
matroid along this map gives a polymatroid; the fibers of the map lift a
polymatroid back to a matroid.

Base polytopes are characterized geometrically: a polytope is the base
polytope of a discrete polymatroid iff its vertices are block-count images
of hypersimplex vertices and each of its edges splits, at the image points
lying on it, into images of hypersimplex edges.  (An edge of the projected
hypersimplex may well be a chain of two or more such images.)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import d_subsets, projection_matrix
from . import polytope as pt

BaseVector = tuple[int, ...]


class RankCollapseError(ValueError):
    """A deletion/contraction would drop the rank of the matroid."""


def _as_base_vector(v: Sequence[int]) -> BaseVector:
    out = tuple(int(x) for x in v)
    if any(x < 0 for x in out):
        raise ValueError("basis vectors must be nonnegative")
    return out


@dataclass(frozen=True)
class Matroid:
    """A matroid given by its set of bases (d-subsets of range(n))."""

    n: int
    d: int
    bases: frozenset[tuple[int, ...]]

    def __post_init__(self):
        if not self.bases:
            raise ValueError("a matroid has at least one basis")
        for B in self.bases:
            if len(B) != self.d or list(B) != sorted(set(B)):
                raise ValueError(f"not a sorted {self.d}-subset: {B}")
            if B and (B[0] < 0 or B[-1] >= self.n):
                raise ValueError(f"basis {B} outside range({self.n})")

    @classmethod
    def from_bases(cls, n: int, bases: Iterable[Sequence[int]]) -> "Matroid":
        bs = frozenset(tuple(sorted(int(x) for x in B)) for B in bases)
        d = len(next(iter(bs)))
        return cls(n, d, bs)

    @classmethod
    def uniform(cls, d: int, n: int) -> "Matroid":
        return cls(n, d, frozenset(d_subsets(n, d)))

    def is_valid(self) -> bool:
        """Set-exchange axiom, checked exhaustively."""
        for A, B in itertools.product(self.bases, repeat=2):
            for a in set(A) - set(B):
                if not any(tuple(sorted((set(A) - {a}) | {b})) in self.bases
                           for b in set(B) - set(A)):
                    return False
        return True


@dataclass(frozen=True)
class Polymatroid:
    """A discrete polymatroid: equal-modulus integer vectors with caps."""

    m: int
    d: int
    caps: tuple[int, ...]
    bases: frozenset[BaseVector]

    def __post_init__(self):
        if not self.bases:
            raise ValueError("a polymatroid has at least one basis vector")
        if len(self.caps) != self.m:
            raise ValueError("caps length must equal the ground size")
        for v in self.bases:
            if len(v) != self.m:
                raise ValueError("basis vector of wrong length")
            if sum(v) != self.d:
                raise ValueError("basis vectors must share one modulus")
            if any(x > r for x, r in zip(v, self.caps)):
                raise ValueError(f"basis vector {v} exceeds caps {self.caps}")

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence[int]],
                     caps: Sequence[int] | None = None) -> "Polymatroid":
        vs = frozenset(_as_base_vector(v) for v in vectors)
        some = next(iter(vs))
        derived = tuple(max(v[i] for v in vs) for i in range(len(some)))
        use = tuple(int(c) for c in caps) if caps is not None else derived
        return cls(len(some), sum(some), use, vs)

    def is_valid(self) -> bool:
        return check_exchange(self.bases)


def check_exchange(vectors: Iterable[Sequence[int]]) -> bool:
    """Vector exchange axiom on a candidate set of basis vectors."""
    vs = [_as_base_vector(v) for v in vectors]
    if not vs:
        raise ValueError("empty candidate set")
    m = len(vs[0])
    if any(len(v) != m for v in vs):
        raise ValueError("vectors of mixed length")
    if len({sum(v) for v in vs}) != 1:
        raise ValueError("vectors of mixed modulus")
    vset = set(vs)
    for u, v in itertools.product(vset, repeat=2):
        for i in range(m):
            if u[i] > v[i]:
                ok = False
                for j in range(m):
                    if u[j] < v[j]:
                        w = list(u)
                        w[i] -= 1
                        w[j] += 1
                        if tuple(w) in vset:
                            ok = True
                            break
                if not ok:
                    return False
    return True


def block_count(A: Sequence[int], caps: Sequence[int]) -> BaseVector:
    """Count how many indices of A fall in each consecutive block."""
    bounds = list(itertools.accumulate(caps))
    out = [0] * len(caps)
    for a in A:
        for i, b in enumerate(bounds):
            if a < b:
                out[i] += 1
                break
        else:
            raise ValueError(f"index {a} outside the blocks")
    return tuple(out)


def project_matroid(M: Matroid, caps: Sequence[int]) -> Polymatroid:
    """Push a matroid along the block-count map."""
    caps = tuple(int(r) for r in caps)
    if sum(caps) != M.n:
        raise ValueError("block sizes must sum to the ground size")
    vectors = frozenset(block_count(B, caps) for B in M.bases)
    return Polymatroid(len(caps), M.d, caps, vectors)


def lift_polymatroid(B: Polymatroid, caps: Sequence[int] | None = None) -> Matroid:
    """All d-subsets of the expanded ground set whose block counts are bases."""
    caps = B.caps if caps is None else tuple(int(r) for r in caps)
    n = sum(caps)
    bases = [A for A in d_subsets(n, B.d) if block_count(A, caps) in B.bases]
    return Matroid(n, B.d, frozenset(bases))


def base_polytope(B: Polymatroid) -> pt.Polytope:
    return pt.hull(B.bases)


def matroid_polytope(M: Matroid) -> pt.Polytope:
    verts = [tuple(1 if j in A else 0 for j in range(M.n)) for A in M.bases]
    return pt.hull(verts)


def _images(d: int, n: int, caps: Sequence[int]):
    """Block-count images of the hypersimplex vertex and edge sets."""
    lam = projection_matrix(caps)
    subsets = d_subsets(n, d)
    image = {A: lam.apply(tuple(1 if j in A else 0 for j in range(n)))
             for A in subsets}
    pts = {}
    for A, p in image.items():
        pts.setdefault(p, []).append(A)
    segments = set()
    for A, B in itertools.combinations(subsets, 2):
        if len(set(A) & set(B)) != d - 1:
            continue
        pa, pb = image[A], image[B]
        if pa != pb:
            segments.add((pa, pb) if pa <= pb else (pb, pa))
    return pts, segments


def is_polymatroid_polytope(Q: pt.Polytope, d: int, n: int,
                            caps: Sequence[int]) -> bool:
    """Base-polytope criterion for a candidate polytope.

    Every vertex of Q must be a block-count image of a hypersimplex vertex,
    and every edge of Q must be a chain of images of hypersimplex edges
    (splitting at the image points that lie on it).
    """
    caps = tuple(int(r) for r in caps)
    if sum(caps) != n:
        raise ValueError("block sizes must sum to n")
    if Q.is_empty or Q.ambient_dim != len(caps):
        return False
    image_points, image_segments = _images(d, n, caps)
    if any(v not in image_points for v in Q.vertices):
        return False
    for a, b in pt.edge_segments(Q):
        j0 = next(j for j in range(len(a)) if a[j] != b[j])
        on_edge = [p for p in image_points if _on_segment(p, a, b)]
        on_edge.sort(key=lambda p: Fraction(p[j0] - a[j0], b[j0] - a[j0]))
        for u, v in zip(on_edge, on_edge[1:]):
            seg = (u, v) if u <= v else (v, u)
            if seg not in image_segments:
                return False
    return True


def _on_segment(p, a, b) -> bool:
    """Exact test for p in the segment [a, b]."""
    t = None
    for pa, aa, bb in zip(p, a, b):
        if aa == bb:
            if pa != aa:
                return False
        else:
            s = Fraction(pa - aa, bb - aa)
            if t is None:
                t = s
            elif s != t:
                return False
    if t is None:  # a == b
        return p == a
    return 0 <= t <= 1


def polymatroid_from_polytope(Q: pt.Polytope, d: int,
                              caps: Sequence[int]) -> Polymatroid:
    """Recover the polymatroid whose base polytope is Q (its modulus-d
    lattice points)."""
    caps = tuple(int(r) for r in caps)
    if not is_polymatroid_polytope(Q, d, sum(caps), caps):
        raise ValueError("not a polymatroid base polytope")
    vectors = [p for p in pt.lattice_points(Q) if sum(p) == d]
    return Polymatroid(len(caps), d, caps, frozenset(vectors))


def dual(B: Polymatroid) -> Polymatroid:
    """Complement every basis vector in the caps vector; an involution."""
    bases = frozenset(tuple(r - x for r, x in zip(B.caps, v)) for v in B.bases)
    return Polymatroid(B.m, sum(B.caps) - B.d, B.caps, bases)


def _reindex(A: Iterable[int], removed: Sequence[int]) -> tuple[int, ...]:
    removed = sorted(removed)
    out = []
    for a in A:
        shift = sum(1 for r in removed if r < a)
        out.append(a - shift)
    return tuple(sorted(out))


def delete(M: Matroid, I: Sequence[int]) -> Matroid:
    """Delete the indices in I; bases are the bases avoiding I."""
    I = sorted(set(int(i) for i in I))
    if any(i < 0 or i >= M.n for i in I):
        raise ValueError("index out of range")
    kept = [B for B in M.bases if not set(B) & set(I)]
    if not kept:
        raise RankCollapseError(f"every basis meets {I}; deletion drops the rank")
    return Matroid(M.n - len(I), M.d, frozenset(_reindex(B, I) for B in kept))


def contract(M: Matroid, I: Sequence[int]) -> Matroid:
    """Contract the independent set I; bases are B - I for bases B containing I."""
    I = sorted(set(int(i) for i in I))
    if any(i < 0 or i >= M.n for i in I):
        raise ValueError("index out of range")
    kept = [B for B in M.bases if set(I) <= set(B)]
    if not kept:
        raise RankCollapseError(f"{I} is dependent; contraction collapses the rank")
    return Matroid(M.n - len(I), M.d - len(I),
                   frozenset(_reindex(set(B) - set(I), I) for B in kept))
