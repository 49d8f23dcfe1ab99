"""Labeled point configurations, their triangulations, and secondary polytopes.

A configuration is an ordered list of integer points in which repeated
coordinates are allowed: each occurrence keeps its own label (its position
in the list), and optionally a display name such as the index subset it
came from.  A triangulation of the pair (hull, configuration) is a set of
full-dimensional label simplices that

  * pairwise intersect exactly in the hull of their shared labels
    (two cells overlapping in a point they do not share by label are
    incompatible, even if the coordinates agree), and
  * have volumes summing to the normalized volume of the hull.

Labels may go unused; in a configuration with a repeated interior point, a
cell through one copy is incompatible with a cell through the other copy,
which is what makes the count of triangulations label-sensitive.

The characteristic vector of a triangulation assigns to every label the
total normalized volume of the cells having it as a vertex; the convex
hull of all characteristic vectors is the secondary polytope of the
configuration, a polytope in R^N for N labels.

Enumeration is an exhaustive depth-first exact-cover search over the
candidate simplices in a fixed order, so non-regular triangulations (none
occur in the small configurations treated here, but the search would find
them) are included.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .linalg import (as_vector, d_subsets, int_det, is_integral,
                     projection_matrix, rank_of_rows, solve_unique, vec_sub)
from . import polytope as pt


class TriangulationCapError(ValueError):
    """Configuration too large for exhaustive triangulation search."""


@dataclass(frozen=True)
class LabeledConfig:
    """Ordered integer points with stable labels 0..N-1 and display names."""

    ambient_dim: int
    points: tuple[tuple[int, ...], ...]
    names: tuple[object, ...] | None = None

    def __post_init__(self):
        if not self.points:
            raise ValueError("a configuration has at least one point")
        if any(len(p) != self.ambient_dim for p in self.points):
            raise ValueError("point of wrong dimension")
        if self.names is not None and len(self.names) != len(self.points):
            raise ValueError("one name per point expected")

    @classmethod
    def from_points(cls, points: Sequence[Sequence[int]],
                    names: Sequence[object] | None = None) -> "LabeledConfig":
        pts = tuple(tuple(int(x) for x in p) for p in points)
        return cls(len(pts[0]), pts, tuple(names) if names is not None else None)

    def __len__(self) -> int:
        return len(self.points)

    def hull(self) -> pt.Polytope:
        return pt.hull(self.points)


def weight_config(d: int, n: int, caps: Sequence[int]) -> LabeledConfig:
    """Block-count images of the d-subset indicator vectors, one labeled
    point per d-subset in lexicographic order; the display name is the
    subset itself."""
    caps = tuple(int(r) for r in caps)
    if sum(caps) != n:
        raise ValueError("block sizes must sum to n")
    lam = projection_matrix(caps)
    pts = []
    names = []
    for A in d_subsets(n, d):
        img = lam.apply(tuple(1 if j in A else 0 for j in range(n)))
        pts.append(tuple(int(x) for x in img))
        names.append(A)
    return LabeledConfig(len(caps), tuple(pts), tuple(names))


Simplex = tuple[int, ...]  # sorted labels, len = affine_dim + 1


@lru_cache(maxsize=None)
def _reduced_points(config: LabeledConfig) -> tuple[tuple[tuple[int, ...], ...], int]:
    """The configuration in integer coordinates on a lattice basis of the
    direction space of its hull.  Returns (points, affine_dim); working in
    these coordinates makes the hull full-dimensional and keeps both the
    lattice and all intersections intact."""
    H = config.hull()
    k = H.affine_dim
    basis = pt._direction_lattice(H.equations, config.ambient_dim)
    base = as_vector(H.vertices[0])
    bt_rows = [[b[i] for b in basis] for i in range(config.ambient_dim)]
    reduced = []
    for p in config.points:
        c = solve_unique(bt_rows, vec_sub(as_vector(p), base), k) if k else ()
        assert c is not None and is_integral(c)
        reduced.append(tuple(int(x) for x in c))
    return tuple(reduced), k


@lru_cache(maxsize=None)
def _cell_hull(config: LabeledConfig, simplex: Simplex) -> pt.Polytope:
    reduced, _ = _reduced_points(config)
    return pt.hull([reduced[l] for l in simplex])


def candidate_simplices(config: LabeledConfig) -> list[Simplex]:
    """All full-dimensional label simplices (affinely independent tuples of
    affine_dim + 1 labels), in lexicographic label order."""
    reduced, k = _reduced_points(config)
    out = []
    for labels in itertools.combinations(range(len(config)), k + 1):
        base = as_vector(reduced[labels[0]])
        rows = [vec_sub(as_vector(reduced[l]), base) for l in labels[1:]]
        if rank_of_rows(rows) == k:
            out.append(labels)
    return out


def simplex_hull(config: LabeledConfig, simplex: Iterable[int]) -> pt.Polytope:
    return pt.hull([config.points[l] for l in simplex])


def cell_volume(config: LabeledConfig, simplex: Simplex) -> int:
    """Normalized volume of a cell, measured in the hull's lattice."""
    reduced, k = _reduced_points(config)
    if k == 0:
        return 0
    base = reduced[simplex[0]]
    rows = [[a - b for a, b in zip(reduced[l], base)] for l in simplex[1:]]
    return abs(int_det(rows))


def compatible(sigma: Simplex, tau: Simplex, config: LabeledConfig) -> bool:
    """Label-aware common-face test: the geometric intersection of the two
    cells must be exactly the hull of their shared labels (empty when no
    label is shared)."""
    shared = tuple(sorted(set(sigma) & set(tau)))
    reduced, _ = _reduced_points(config)
    meet = pt.intersect(_cell_hull(config, sigma), _cell_hull(config, tau))
    if not shared:
        return meet.is_empty
    return meet == pt.hull([reduced[l] for l in shared])


@dataclass(frozen=True)
class Triangulation:
    """A set of pairwise-compatible cells tiling the hull."""

    cells: frozenset[Simplex]

    def labels_used(self) -> frozenset[int]:
        return frozenset(l for cell in self.cells for l in cell)


def enumerate_triangulations(config: LabeledConfig,
                             cap: int = 12) -> list[Triangulation]:
    """All triangulations of (hull, configuration), by exhaustive search.

    Raises TriangulationCapError when the configuration has more than
    `cap` points.
    """
    if len(config) > cap:
        raise TriangulationCapError(
            f"{len(config)} points exceed the cap of {cap}")
    hull_ = config.hull()
    target = pt.normalized_volume(hull_)
    cands = candidate_simplices(config)
    if target == 0:
        return [Triangulation(frozenset({cands[0]}))] if cands else []
    vols = [cell_volume(config, s) for s in cands]
    compat = [[False] * len(cands) for _ in cands]
    for i, j in itertools.combinations(range(len(cands)), 2):
        compat[i][j] = compat[j][i] = compatible(cands[i], cands[j], config)

    found: list[Triangulation] = []
    suffix_vol = [0] * (len(cands) + 1)
    for i in range(len(cands) - 1, -1, -1):
        suffix_vol[i] = suffix_vol[i + 1] + vols[i]

    def search(start: int, chosen: list[int], vol: int):
        if vol == target:
            found.append(Triangulation(frozenset(cands[i] for i in chosen)))
            return
        if vol + suffix_vol[start] < target:
            return
        for i in range(start, len(cands)):
            if vol + vols[i] > target:
                continue
            if all(compat[i][j] for j in chosen):
                chosen.append(i)
                search(i + 1, chosen, vol + vols[i])
                chosen.pop()

    search(0, [], 0)
    return found


def char_vector(T: Triangulation, config: LabeledConfig) -> tuple[int, ...]:
    """Per-label sums of the normalized volumes of the incident cells."""
    phi = [0] * len(config)
    for cell in T.cells:
        v = cell_volume(config, cell)
        for l in cell:
            phi[l] += v
    return tuple(phi)


def secondary_polytope(config: LabeledConfig, cap: int = 12) -> pt.Polytope:
    """Hull of the characteristic vectors of all triangulations."""
    tris = enumerate_triangulations(config, cap=cap)
    return pt.hull([char_vector(T, config) for T in tris])
