"""Query access to families, explicit or implicit.

An oracle answers containment, codegree, and extension queries.  The
explicit realization wraps a materialized :class:`Family`; the star
realization answers for the complete star centered at a vertex without
materializing its C(n-1, k-1) edges.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from math import comb
from typing import Iterator, Optional

from .family import Family, FamilyParams, LinkGraph
from .masks import (
    Mask,
    bit,
    iter_ksubsets,
    iter_subsets_within,
    labels,
    popcount,
    smallest_subset,
)


class FamilyOracle(ABC):
    @property
    @abstractmethod
    def params(self) -> FamilyParams: ...

    @abstractmethod
    def contains(self, e: Mask) -> bool: ...

    @abstractmethod
    def degree(self, s: Mask) -> int:
        """Number of edges containing ``s`` (requires |s| <= k)."""

    @abstractmethod
    def extension(self, base: Mask, forbidden: Mask = 0) -> Optional[Mask]:
        """Canonically smallest edge e >= base with (e - base) avoiding ``forbidden``."""

    @abstractmethod
    def enumerate_extensions(self, base: Mask) -> Iterator[Mask]:
        """All edges containing ``base``, in canonical order."""

    def first_edge(self) -> Optional[Mask]:
        return self.extension(0, 0)

    def _check_degree_arg(self, s: Mask) -> None:
        if popcount(s) > self.params.k:
            raise ValueError(f"degree query set {labels(s)} larger than k={self.params.k}")
        if s & ~self.params.full:
            raise ValueError("query set outside the ground set")


class ExplicitOracle(FamilyOracle):
    """Oracle backed by scans over an explicit edge list."""

    def __init__(self, family: Family):
        self.family = family

    @property
    def params(self) -> FamilyParams:
        return self.family.params

    def contains(self, e: Mask) -> bool:
        return e in self.family.edge_set

    def degree(self, s: Mask) -> int:
        self._check_degree_arg(s)
        return sum(1 for e in self.family.edges if e & s == s)

    def extension(self, base: Mask, forbidden: Mask = 0) -> Optional[Mask]:
        for e in self.family.edges:
            if e & base == base and not (e & ~base) & forbidden:
                return e
        return None

    def enumerate_extensions(self, base: Mask) -> Iterator[Mask]:
        for e in self.family.edges:
            if e & base == base:
                yield e


class StarOracle(FamilyOracle):
    """The complete star centered at ``center``, answered in closed form."""

    def __init__(self, n: int, k: int, center: int):
        if not (1 <= center <= n):
            raise ValueError(f"center {center} outside [1..{n}]")
        self._params = FamilyParams(n, k)
        self.center = center
        self._cbit = bit(center)

    @property
    def params(self) -> FamilyParams:
        return self._params

    def contains(self, e: Mask) -> bool:
        p = self._params
        return popcount(e) == p.k and not e & ~p.full and bool(e & self._cbit)

    def degree(self, s: Mask) -> int:
        self._check_degree_arg(s)
        p, d = self._params, popcount(s)
        if s & self._cbit:
            return comb(p.n - d, p.k - d)
        return comb(p.n - d - 1, p.k - d - 1) if p.k - d - 1 >= 0 else 0

    def extension(self, base: Mask, forbidden: Mask = 0) -> Optional[Mask]:
        p = self._params
        if popcount(base) > p.k or base & ~p.full:
            return None
        core = base | self._cbit
        if popcount(core) > p.k:
            return None  # every edge contains the center
        if (core & ~base) & forbidden:
            return None  # the center itself would violate the exclusion
        free = p.full & ~core & ~forbidden
        need = p.k - popcount(core)
        if popcount(free) < need:
            return None
        return core | smallest_subset(free, need)

    def enumerate_extensions(self, base: Mask) -> Iterator[Mask]:
        p = self._params
        core = base | self._cbit
        need = p.k - popcount(core)
        if popcount(base) > p.k or base & ~p.full or need < 0:
            return
        for rest in iter_subsets_within(p.full & ~core, need):
            yield core | rest


def degree(oracle: FamilyOracle, s: Mask) -> int:
    return oracle.degree(s)


def link(source: FamilyOracle | Family, base: Mask) -> LinkGraph:
    """Link of a (k-2)-set as a pair graph, from a family or an oracle."""
    if isinstance(source, Family):
        oracle: FamilyOracle = ExplicitOracle(source)
    else:
        oracle = source
    p = oracle.params
    if popcount(base) != p.k - 2:
        raise ValueError(f"base must have size k-2 = {p.k - 2}")
    pairs = tuple(sorted(e & ~base for e in oracle.enumerate_extensions(base)))
    return LinkGraph(base=base, vertices=p.full & ~base, pairs=pairs)


def min_degree_scan(oracle: FamilyOracle, d: int) -> tuple[int, Mask]:
    """Minimum d-degree by exhaustive iteration over all d-subsets of [n].

    The slow, assumption-free route; kept independent of the counting
    path so the two can check each other.
    """
    p = oracle.params
    if not (1 <= d <= p.k):
        raise ValueError(f"require 1 <= d <= k, got d={d}")
    best_val, best_arg = None, None
    for s in iter_ksubsets(p.n, d):
        v = oracle.degree(s)
        if best_val is None or v < best_val:
            best_val, best_arg = v, s
            if v == 0:
                break
    assert best_val is not None and best_arg is not None
    return best_val, best_arg


def _min_degree_explicit(family: Family, d: int) -> tuple[int, Mask]:
    """Counting route: tally the d-subsets of every edge, then take the minimum."""
    p = family.params
    counts: dict[Mask, int] = {}
    for e in family.edges:
        for s in iter_subsets_within(e, d):
            counts[s] = counts.get(s, 0) + 1
    if len(counts) < comb(p.n, d):
        for s in iter_ksubsets(p.n, d):
            if s not in counts:
                return 0, s
    best_val, best_arg = None, None
    for s, v in counts.items():
        if best_val is None or v < best_val or (v == best_val and s < best_arg):
            best_val, best_arg = v, s
    assert best_val is not None and best_arg is not None
    return best_val, best_arg


def min_degree(oracle: FamilyOracle | Family, d: int) -> tuple[int, Mask]:
    """Minimum d-degree over all d-subsets of [n], with a canonical argmin.

    Vertices outside the edge union count: an untouched d-set gives 0.
    The empty explicit family has minimum degree 0 everywhere.
    """
    if isinstance(oracle, Family):
        fam = oracle
        if not (1 <= d <= fam.params.k):
            raise ValueError(f"require 1 <= d <= k, got d={d}")
        if not fam.edges:
            return 0, smallest_subset(fam.params.full, d)
        return _min_degree_explicit(fam, d)
    if isinstance(oracle, StarOracle):
        p = oracle.params
        if not (1 <= d <= p.k):
            raise ValueError(f"require 1 <= d <= k, got d={d}")
        value = comb(p.n - d - 1, p.k - d - 1) if p.k - d - 1 >= 0 else 0
        avoid = p.full & ~bit(oracle.center)
        return value, smallest_subset(avoid, d)
    if isinstance(oracle, ExplicitOracle):
        return min_degree(oracle.family, d)
    return min_degree_scan(oracle, d)
