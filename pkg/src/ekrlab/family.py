"""Ground types: parameters, k-uniform families, links, and cover pairs."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

from .masks import (
    Mask,
    bit,
    full_mask,
    iter_bits,
    iter_subsets_within,
    labels,
    mask_of,
    popcount,
)


@dataclass(frozen=True)
class FamilyParams:
    """Ground-set size ``n`` (vertices labeled 1..n) and edge size ``k``."""

    n: int
    k: int

    def __post_init__(self) -> None:
        if not (1 <= self.k <= self.n):
            raise ValueError(f"require 1 <= k <= n, got n={self.n} k={self.k}")

    @property
    def full(self) -> Mask:
        return full_mask(self.n)


@dataclass(frozen=True)
class Family:
    """An explicit k-uniform family: strictly increasing, deduplicated edge masks."""

    params: FamilyParams
    edges: tuple[Mask, ...]

    def __post_init__(self) -> None:
        k, full = self.params.k, self.params.full
        prev = -1
        for e in self.edges:
            if e & ~full:
                raise ValueError(f"edge {labels(e)} not within ground set [..{self.params.n}]")
            if popcount(e) != k:
                raise ValueError(f"edge {labels(e)} has size {popcount(e)}, expected {k}")
            if e <= prev:
                raise ValueError("edges not strictly increasing in canonical order")
            prev = e

    @classmethod
    def from_masks(cls, params: FamilyParams, edges: Iterable[Mask]) -> "Family":
        return cls(params, tuple(sorted(set(edges))))

    @classmethod
    def from_labels(cls, params: FamilyParams, edges: Iterable[Iterable[int]]) -> "Family":
        return cls.from_masks(params, (mask_of(e) for e in edges))

    @cached_property
    def edge_set(self) -> frozenset[Mask]:
        return frozenset(self.edges)

    @cached_property
    def vertex_union(self) -> Mask:
        u = 0
        for e in self.edges:
            u |= e
        return u

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, e: Mask) -> bool:
        return e in self.edge_set


@dataclass(frozen=True)
class LinkGraph:
    """Pairs T with T | base an edge of the source family (|base| = k - 2)."""

    base: Mask
    vertices: Mask
    pairs: tuple[Mask, ...]


@dataclass(frozen=True)
class CoverPairs:
    """All 2-subsets of ``area`` meeting every edge of the reference family."""

    area: Mask
    pairs: tuple[Mask, ...]


@dataclass(frozen=True)
class StarViolation:
    """Witness that a restriction is not a complete star: one edge, classified."""

    kind: str  # "missing" (star edge absent) or "offending" (edge avoids the center)
    edge: Mask


def disjoint_pair(fam: Family) -> Optional[tuple[Mask, Mask]]:
    """First (canonical order) pair of disjoint edges, or None if intersecting."""
    edges = fam.edges
    for i, e in enumerate(edges):
        for f in edges[i + 1 :]:
            if not e & f:
                return (e, f)
    return None


def is_intersecting(fam: Family) -> bool:
    return disjoint_pair(fam) is None


def restrict(fam: Family, window: Mask) -> Family:
    """Edges of the family contained in ``window``; parameters unchanged."""
    return Family(fam.params, tuple(e for e in fam.edges if not e & ~window))


def covers_size1(fam: Family) -> tuple[Mask, bool]:
    """Vertices lying in every edge, as (mask, vacuous).

    The flag marks the degenerate empty family, for which every vertex
    is vacuously a cover and the whole ground set is returned.
    """
    if not fam.edges:
        return fam.params.full, True
    c = fam.params.full
    for e in fam.edges:
        c &= e
        if not c:
            break
    return c, False


def _avoidance_masks(edges: tuple[Mask, ...], area: Mask) -> dict[Mask, int]:
    """For each vertex bit of ``area``, the edge-index set (as int) of edges avoiding it."""
    m = len(edges)
    hit = {v: 0 for v in iter_bits(area)}
    for j, e in enumerate(edges):
        jb = 1 << j
        rel = e & area
        while rel:
            low = rel & -rel
            hit[low] |= jb
            rel ^= low
    all_edges = (1 << m) - 1
    return {v: all_edges ^ h for v, h in hit.items()}


def covers_size2(fam: Family, area: Mask) -> CoverPairs:
    """All 2-subsets of ``area`` that meet every edge of the family.

    Edge-incidence bitsets make each pair test one AND over |F| bits.
    """
    avoid = _avoidance_masks(fam.edges, area)
    verts = list(iter_bits(area))
    pairs = []
    for i, a in enumerate(verts):
        av_a = avoid[a]
        for b in verts[i + 1 :]:
            if not av_a & avoid[b]:
                pairs.append(a | b)
    return CoverPairs(area=area, pairs=tuple(sorted(pairs)))


def link_of_family(fam: Family, base: Mask) -> LinkGraph:
    """Link of a (k-2)-set: the pair graph {e - base : base <= e in F}."""
    if popcount(base) != fam.params.k - 2:
        raise ValueError(f"base must have size k-2 = {fam.params.k - 2}")
    pairs = tuple(sorted(e & ~base for e in fam.edges if e & base == base))
    return LinkGraph(base=base, vertices=fam.params.full & ~base, pairs=pairs)


def is_complete_star_on(fam: Family, window: Mask, center: int) -> Optional[StarViolation]:
    """Check F[window] is the complete star at ``center``; None means yes.

    Returns the first offending edge (inside the window, avoiding the
    center) or else the first missing star edge, in canonical order.
    """
    cbit = bit(center)
    if not window & cbit:
        raise ValueError("center must lie inside the window")
    if popcount(window) < fam.params.k:
        raise ValueError("window smaller than the edge size")
    for e in fam.edges:
        if not e & ~window and not e & cbit:
            return StarViolation("offending", e)
    k = fam.params.k
    edge_set = fam.edge_set
    for rest in iter_subsets_within(window & ~cbit, k - 1):
        e = rest | cbit
        if e not in edge_set:
            return StarViolation("missing", e)
    return None
