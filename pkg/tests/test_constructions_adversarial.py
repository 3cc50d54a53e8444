"""Paths that only non-star or inconsistent inputs can reach.

Complete stars drive every procedure down the happy path; these
families and synthetic oracles steer into the second window, the
cross-window edge derivation, and the phase-2 case analysis.
"""

from math import comb

from ekrlab.constructions import (
    DisjointEdges,
    LowCodegree,
    ZeroCodegree,
    certify_star_k1,
    certify_star_k2,
    shrink_core_k2,
)
from ekrlab.family import Family, FamilyParams
from ekrlab.generators import complete_star
from ekrlab.masks import bit, iter_bits, iter_subsets_within, labels, mask_of, popcount, smallest_subset
from ekrlab.oracles import ExplicitOracle, FamilyOracle


def without_edge(star: Family, edge_labels) -> Family:
    gone = mask_of(edge_labels)
    assert gone in star.edge_set
    return Family(star.params, tuple(e for e in star.edges if e != gone))


class TestSecondWindowK1:
    def test_missing_edge_beyond_first_window(self):
        # removing an edge that lives outside the canonical first window
        # passes the first star check and fails in the second
        fam = without_edge(complete_star(11, 3, 1), [1, 10, 11])
        o = ExplicitOracle(fam)
        cert = certify_star_k1(o)
        assert cert.center is None
        assert isinstance(cert.violation, ZeroCodegree)
        assert cert.violation.query_set == mask_of([10, 11])
        assert cert.violation.verify(o)

    def test_cross_window_edge_absent(self):
        # a star confined to the first window plus a disjoint blob: the
        # cross-window star edge is missing and the probe turns up the
        # disjoint pair
        params = FamilyParams(11, 3)
        edges = [bit(1) | rest for rest in iter_subsets_within(mask_of(range(2, 9)), 2)]
        edges.append(mask_of([9, 10, 11]))
        fam = Family.from_masks(params, edges)
        o = ExplicitOracle(fam)
        cert = certify_star_k1(o)
        assert isinstance(cert.violation, DisjointEdges)
        assert cert.violation.verify(o)


class TestSecondWindowK2:
    def test_missing_edge_beyond_first_window(self):
        fam = without_edge(complete_star(232, 3, 1), [1, 231, 232])
        o = ExplicitOracle(fam)
        cert = certify_star_k2(o)
        assert cert.center is None
        assert isinstance(cert.violation, LowCodegree)
        assert cert.violation.verify(o)


class TwoStarOracle(FamilyOracle):
    """Union of the complete stars at two centers; intersecting it is not."""

    def __init__(self, n: int, k: int, a: int, b: int):
        self._params = FamilyParams(n, k)
        self.ab = bit(a) | bit(b)

    @property
    def params(self):
        return self._params

    def contains(self, e):
        p = self._params
        return popcount(e) == p.k and not e & ~p.full and bool(e & self.ab)

    def degree(self, s):
        self._check_degree_arg(s)
        p, d = self._params, popcount(s)
        if s & self.ab:
            return comb(p.n - d, p.k - d)
        hits_both = comb(p.n - d - 2, p.k - d - 2) if p.k - d - 2 >= 0 else 0
        return 2 * comb(p.n - d - 1, p.k - d - 1) - hits_both

    def extension(self, base, forbidden=0):
        p = self._params
        best = None
        for cbit in iter_bits(self.ab):
            core = base | cbit
            if popcount(core) > p.k or (core & ~base) & forbidden:
                continue
            free = p.full & ~core & ~forbidden
            need = p.k - popcount(core)
            if popcount(free) < need:
                continue
            cand = core | smallest_subset(free, need)
            best = cand if best is None else min(best, cand)
        return best

    def enumerate_extensions(self, base):
        p = self._params
        seen = set()
        for cbit in iter_bits(self.ab):
            core = base | cbit
            need = p.k - popcount(core)
            if need < 0:
                continue
            for rest in iter_subsets_within(p.full & ~core, need):
                e = core | rest
                if e not in seen:
                    seen.add(e)
                    yield e


class TestTwoStarUnion:
    def test_shrink_k2_refutes_with_disjoint_pair(self):
        # high codegree everywhere, yet not intersecting: phase 2 runs
        # through non-star links (pattern reduction) and the final
        # consolidation surfaces a concrete disjoint pair
        o = TwoStarOracle(230, 3, 1, 2)
        r = shrink_core_k2(o, o.first_edge())
        assert not r.ok
        assert isinstance(r.violation, DisjointEdges)
        assert r.violation.verify(o)

    def test_oracle_answers_match_explicit_union(self):
        n = 12
        o = TwoStarOracle(n, 3, 1, 2)
        edges = sorted(set(complete_star(n, 3, 1).edges) | set(complete_star(n, 3, 2).edges))
        exp = ExplicitOracle(Family(FamilyParams(n, 3), tuple(edges)))
        from ekrlab.masks import iter_ksubsets

        for d in range(0, 3):
            for s in iter_ksubsets(n, d):
                assert o.degree(s) == exp.degree(s), labels(s)
        import random

        rng = random.Random(5)
        for _ in range(300):
            base = rng.randrange(1 << n)
            forb = rng.randrange(1 << n)
            assert o.extension(base, forb) == exp.extension(base, forb)


class PatchworkOracle(FamilyOracle):
    """Link answers are complete stars whose center depends on the query.

    Globally inconsistent on purpose: no single family has these links.
    Drives the distinct-center and common-center cases of the phase-2
    cover elimination.
    """

    def __init__(self, n: int, k: int):
        assert k == 3
        self._params = FamilyParams(n, k)

    @property
    def params(self):
        return self._params

    def _center(self, x: int) -> int:
        if x == 1:
            return 2
        if x == 2:
            return 1
        return 1 if x % 2 else 2

    def contains(self, e):
        return popcount(e) == 3 and not e & ~self._params.full

    def degree(self, s):
        return len(list(self.enumerate_extensions(s))) if popcount(s) <= 3 else 0

    def extension(self, base, forbidden=0):
        for e in self.enumerate_extensions(base):
            if not (e & ~base) & forbidden:
                return e
        return None

    def enumerate_extensions(self, base):
        p = self._params
        if popcount(base) == 0:
            yield mask_of([1, 2, 3])
            return
        if popcount(base) == 1:
            x = labels(base)[0]
            w = self._center(x)
            core = base | bit(w)
            for rest in iter_subsets_within(p.full & ~core, 1):
                yield core | rest
            return
        for rest in iter_subsets_within(p.full & ~base, 3 - popcount(base)):
            yield base | rest


class TestPatchworkCases:
    def test_distinct_center_case_terminates(self):
        # parity-striped link centers force the two-center branch before
        # a common-center block ends phase 2; postconditions are checked
        # exhaustively inside
        o = PatchworkOracle(230, 3)
        r = shrink_core_k2(o, mask_of([1, 2, 3]))
        assert r.ok
        assert r.cover_vertex in (1, 2)
        from ekrlab.family import covers_size2

        cov = covers_size2(r.subfamily.family, r.subfamily.vertex_set)
        assert all(pr & bit(r.cover_vertex) for pr in cov.pairs)
