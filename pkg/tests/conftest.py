"""Shared brute-force references and random-instance helpers.

Everything here recomputes answers from definitions (double loops over
explicit edge lists), independent of the library's internal paths, so
the two routes can check each other.
"""

from __future__ import annotations

import random
from itertools import combinations

import pytest

from ekrlab.family import Family, FamilyParams
from ekrlab.masks import Mask, iter_ksubsets, mask_of


def ref_degree(fam: Family, s: Mask) -> int:
    return sum(1 for e in fam.edges if e & s == s)


def ref_min_degree(fam: Family, d: int) -> tuple[int, Mask]:
    best_val, best_arg = None, None
    for verts in combinations(range(1, fam.params.n + 1), d):
        s = mask_of(verts)
        v = ref_degree(fam, s)
        if best_val is None or v < best_val or (v == best_val and s < best_arg):
            best_val, best_arg = v, s
    return best_val, best_arg


def ref_covers_size2(fam: Family, area: Mask) -> set[Mask]:
    """Independent double loop: try every pair, scan every edge."""
    verts = [v for v in range(1, fam.params.n + 1) if area >> (v - 1) & 1]
    out = set()
    for a, b in combinations(verts, 2):
        pair = mask_of((a, b))
        if all(e & pair for e in fam.edges):
            out.add(pair)
    return out


def ref_is_intersecting(fam: Family) -> bool:
    return all(e & f for e, f in combinations(fam.edges, 2))


def ref_is_maximal_intersecting(fam: Family) -> bool:
    if not ref_is_intersecting(fam):
        return False
    for c in iter_ksubsets(fam.params.n, fam.params.k):
        if c not in fam.edge_set and all(c & e for e in fam.edges):
            return False
    return True


def brute_force_maximal_families(n: int, k: int) -> set[tuple[Mask, ...]]:
    """All maximal intersecting families by filtering every edge subset.

    Feasible up to C(n, k) = 15 (2^15 subsets); uses edge-conflict
    bitsets so each subset costs O(C(n, k)) word operations.
    """
    edges = list(iter_ksubsets(n, k))
    m = len(edges)
    assert m <= 15, "brute force limited to 2^15 subsets"
    compat = [0] * m
    for i in range(m):
        for j in range(m):
            if i != j and edges[i] & edges[j]:
                compat[i] |= 1 << j
    out = set()
    for subset in range(1, 1 << m):
        ok = True
        rest = subset
        while rest:
            i = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            if subset & ~(compat[i] | (1 << i)):
                ok = False
                break
        if not ok:
            continue
        maximal = True
        for j in range(m):
            if not subset >> j & 1 and subset & ~compat[j] == 0:
                maximal = False
                break
        if maximal:
            out.add(tuple(edges[i] for i in range(m) if subset >> i & 1))
    return out


def random_family(rng: random.Random, n: int, k: int, m: int) -> Family:
    pool = list(iter_ksubsets(n, k))
    chosen = rng.sample(pool, min(m, len(pool)))
    return Family.from_masks(FamilyParams(n, k), chosen)


def random_intersecting_family(rng: random.Random, n: int, k: int, tries: int = 40) -> Family:
    """Greedy prefix of a shuffled edge order; nonempty and intersecting."""
    pool = list(iter_ksubsets(n, k))
    rng.shuffle(pool)
    chosen: list[Mask] = []
    budget = rng.randrange(1, tries)
    for c in pool:
        if all(c & e for e in chosen):
            chosen.append(c)
            if len(chosen) >= budget:
                break
    return Family.from_masks(FamilyParams(n, k), chosen)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xEC12)
