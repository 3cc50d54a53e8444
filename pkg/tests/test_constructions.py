import pytest

from ekrlab.bounds import (
    certify_threshold_k1,
    certify_threshold_k2,
    shrink_threshold_k2,
    shrink_vertex_bound_k1,
    shrink_vertex_bound_k2,
)
from ekrlab.constructions import (
    DisjointEdges,
    LowCodegree,
    TracedFamily,
    ZeroCodegree,
    certify_star_k1,
    certify_star_k2,
    cherry_reduce,
    shrink_core_k1,
    shrink_core_k2,
)
from ekrlab.family import Family, FamilyParams, covers_size2, is_complete_star_on
from ekrlab.generators import complete_star, hilton_milner
from ekrlab.graphs import MATCHING3, PATTERN_Q
from ekrlab.masks import full_mask, labels, mask_of, popcount
from ekrlab.oracles import ExplicitOracle, StarOracle


def star_minus_first_edge(n, k, v):
    star = complete_star(n, k, v)
    return Family(star.params, star.edges[1:])


class TestShrinkK1:
    def test_k2_star(self):
        r = shrink_core_k1(StarOracle(9, 2, 1), mask_of([1, 2]))
        assert r.ok
        assert [labels(e) for e in r.subfamily.edges] == [(1, 2), (1, 3)]
        assert labels(r.subfamily.core) == (1,)

    def test_star_k3_bounds(self):
        r = shrink_core_k1(StarOracle(11, 3, 1), mask_of([1, 2, 3]))
        assert r.ok
        assert popcount(r.subfamily.core) <= 1
        assert popcount(r.subfamily.vertex_set) <= 7  # k + sqrt-term + 2

    def test_contains_starting_edge(self):
        r = shrink_core_k1(StarOracle(12, 4, 2), mask_of([1, 2, 3, 4]))
        assert mask_of([1, 2, 3, 4]) in r.subfamily.edges

    def test_hilton_milner_canonical_run_succeeds(self):
        # the degree hypothesis fails globally (delta_2 = 0), but the
        # canonical query sequence from {2,3,4} never touches a
        # zero-degree pair; the core still shrinks below two vertices
        hm = hilton_milner(9, 3)
        r = shrink_core_k1(ExplicitOracle(hm), mask_of([2, 3, 4]))
        assert r.ok
        assert popcount(r.subfamily.core) <= 1

    def test_zero_codegree_witness_on_broken_star(self):
        fam = star_minus_first_edge(11, 3, 1)
        o = ExplicitOracle(fam)
        r = shrink_core_k1(o, o.first_edge())
        assert not r.ok
        assert isinstance(r.violation, ZeroCodegree)
        assert r.violation.query_set == mask_of([2, 3])
        assert r.violation.verify(o)

    def test_precondition_errors(self):
        with pytest.raises(ValueError, match="n >= 7"):
            shrink_core_k1(StarOracle(6, 3, 1), mask_of([1, 2, 3]))
        with pytest.raises(ValueError, match="not in the family"):
            shrink_core_k1(StarOracle(11, 3, 1), mask_of([2, 3, 4]))

    def test_trace_contract_on_star_oracles(self):
        for k in range(2, 65):
            n = certify_threshold_k1(k)
            o = StarOracle(n, k, 1)
            r = shrink_core_k1(o, o.first_edge())
            assert r.ok
            d = r.trace.excesses
            assert d[0] == 1
            assert all(b - a in (0, 1) for a, b in zip(d, d[1:]))
            big_d = r.trace.parameters["D"]
            assert big_d * (big_d + 1) <= 2 * k
            assert popcount(r.subfamily.vertex_set) <= shrink_vertex_bound_k1(k)
            # one extension query per recorded step, plus the containment probe
            steps_with_query = sum(1 for s in r.trace.steps if s.query_set)
            assert steps_with_query <= k + 1


class TestCherryReduce:
    def test_star_link_detected(self):
        o = StarOracle(8, 3, 2)
        sub = TracedFamily(o.params, (mask_of([1, 2, 3]),), mask_of([1, 2, 3]))
        res = cherry_reduce(o, sub, mask_of([1]), mask_of([4, 5]))
        assert res.is_star_link and res.star_center == 2

    def test_matching_link_empties_covers(self):
        edges = [[1, 2, 3], [1, 4, 5], [1, 6, 7], [1, 2, 8], [1, 3, 8], [1, 4, 8]]
        fam = Family.from_labels(FamilyParams(8, 3), edges)
        sub = TracedFamily(fam.params, (mask_of([1, 2, 3]),), mask_of([1, 2, 3]))
        res = cherry_reduce(ExplicitOracle(fam), sub, mask_of([1]), mask_of([4, 5, 6]))
        assert not res.is_star_link
        assert res.pattern.kind == MATCHING3
        assert covers_size2(res.reduced.family, mask_of([4, 5, 6])).pairs == ()

    def test_q_link_leaves_cherry(self):
        edges = [[1, 2, 3], [1, 5, 6], [1, 5, 7], [1, 2, 5], [1, 3, 5], [1, 3, 6]]
        fam = Family.from_labels(FamilyParams(8, 3), edges)
        sub = TracedFamily(fam.params, (mask_of([1, 2, 3]),), mask_of([1, 2, 3]))
        res = cherry_reduce(ExplicitOracle(fam), sub, mask_of([1]), mask_of([2, 3]))
        assert not res.is_star_link
        assert res.pattern.kind == PATTERN_Q
        cov = covers_size2(res.reduced.family, mask_of([2, 3])).pairs
        assert len(cov) <= 2

    def test_degree_precondition(self):
        fam = Family.from_labels(FamilyParams(8, 3), [[1, 2, 3]])
        sub = TracedFamily(fam.params, fam.edges, mask_of([1, 2, 3]))
        with pytest.raises(ValueError, match="below the required"):
            cherry_reduce(ExplicitOracle(fam), sub, mask_of([1]), mask_of([4, 5]))


class TestShrinkK2:
    @pytest.mark.parametrize("k,center", [(3, 1), (8, 5), (27, 1)])
    def test_star_oracle_contract(self, k, center):
        n = certify_threshold_k2(k)
        o = StarOracle(n, k, center)
        e = o.first_edge()
        r = shrink_core_k2(o, e)
        assert r.ok
        assert r.cover_vertex == center
        assert e & mask_of([r.cover_vertex])
        assert popcount(r.subfamily.vertex_set) <= shrink_vertex_bound_k2(k)
        # every size-two cover within the vertex set goes through the center
        cov = covers_size2(r.subfamily.family, r.subfamily.vertex_set)
        assert all(pr & mask_of([center]) for pr in cov.pairs)
        assert r.trace.parameters["ell"] <= (k + r.trace.parameters["x"] - 1) // r.trace.parameters["x"] + 1

    def test_low_codegree_on_star_minus_edge(self):
        n = shrink_threshold_k2(3)
        fam = star_minus_first_edge(n, 3, 1)
        o = ExplicitOracle(fam)
        r = shrink_core_k2(o, o.first_edge())
        assert not r.ok
        assert isinstance(r.violation, LowCodegree)
        assert r.violation.observed < n - 3 + 1
        assert r.violation.verify(o)

    def test_hilton_milner_low_codegree(self):
        fam = hilton_milner(shrink_threshold_k2(3), 3)
        o = ExplicitOracle(fam)
        r = shrink_core_k2(o, o.first_edge())
        assert not r.ok
        assert isinstance(r.violation, LowCodegree)
        assert r.violation.verify(o)

    def test_preconditions(self):
        with pytest.raises(ValueError, match="n >= 230"):
            shrink_core_k2(StarOracle(100, 3, 1), mask_of([1, 2, 3]))
        with pytest.raises(ValueError, match="k >= 3"):
            shrink_core_k2(StarOracle(232, 2, 1), mask_of([1, 2]))


class TestCertifyK1:
    def test_star_oracle_k2(self):
        cert = certify_star_k1(StarOracle(9, 2, 1))
        assert cert.center == 1 and cert.violation is None

    def test_explicit_star_offcenter(self):
        cert = certify_star_k1(ExplicitOracle(complete_star(11, 3, 4)))
        assert cert.center == 4

    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_explicit_threshold_stars(self, k):
        n = certify_threshold_k1(k)
        cert = certify_star_k1(ExplicitOracle(complete_star(n, k, min(k + 1, n))))
        assert cert.center == min(k + 1, n)

    def test_oracle_sweep(self):
        for k in (2, 3, 5, 8, 16, 33, 64):
            n = certify_threshold_k1(k)
            cert = certify_star_k1(StarOracle(n, k, 2), samples=2000)
            assert cert.center == 2

    def test_violation_star_minus_edge(self):
        fam = star_minus_first_edge(11, 3, 1)
        o = ExplicitOracle(fam)
        cert = certify_star_k1(o)
        assert cert.center is None
        assert isinstance(cert.violation, ZeroCodegree)
        assert cert.violation.verify(o)

    def test_violation_hilton_milner(self):
        fam = hilton_milner(11, 3)
        o = ExplicitOracle(fam)
        cert = certify_star_k1(o)
        assert cert.center is None
        assert isinstance(cert.violation, (ZeroCodegree, DisjointEdges))
        assert cert.violation.verify(o)

    def test_threshold_error_names_required_n(self):
        with pytest.raises(ValueError, match="n >= 11"):
            certify_star_k1(StarOracle(10, 3, 1))

    def test_empty_family(self):
        fam = Family(FamilyParams(11, 3), ())
        with pytest.raises(ValueError, match="empty"):
            certify_star_k1(ExplicitOracle(fam))


class TestCertifyK2:
    def test_star_oracle(self):
        cert = certify_star_k2(StarOracle(274, 8, 2), samples=2000)
        assert cert.center == 2 and cert.violation is None

    def test_explicit_star_232(self):
        cert = certify_star_k2(ExplicitOracle(complete_star(232, 3, 1)))
        assert cert.center == 1
        assert cert.violation is None

    def test_hilton_milner_violation(self):
        fam = hilton_milner(232, 3)
        o = ExplicitOracle(fam)
        cert = certify_star_k2(o)
        assert cert.center is None
        assert isinstance(cert.violation, LowCodegree)
        assert cert.violation.verify(o)

    def test_star_minus_edge_violation(self):
        fam = star_minus_first_edge(232, 3, 1)
        o = ExplicitOracle(fam)
        cert = certify_star_k2(o)
        assert cert.center is None
        assert cert.violation is not None and cert.violation.verify(o)

    def test_threshold_error(self):
        with pytest.raises(ValueError, match="n >= 232"):
            certify_star_k2(StarOracle(231, 3, 1))


class TestCertifiedStarsCrossCheck:
    def test_certificate_matches_direct_star_check(self):
        fam = complete_star(11, 3, 2)
        cert = certify_star_k1(ExplicitOracle(fam))
        assert cert.is_star
        assert is_complete_star_on(fam, full_mask(11), cert.center) is None

    def test_non_star_never_certified(self, rng):
        # random maximal intersecting families at qualifying n are never
        # stars unless they literally are the star
        from ekrlab.generators import random_maximal_intersecting

        n, k = 11, 3
        for seed in range(8):
            fam = random_maximal_intersecting(n, k, seed)
            o = ExplicitOracle(fam)
            cert = certify_star_k1(o)
            star_like = is_complete_star_on(fam, full_mask(n), cert.center) is None if cert.is_star else False
            if cert.is_star:
                assert star_like
            else:
                assert cert.violation is not None and cert.violation.verify(o)


class TestGapProbe:
    # coreless subfamilies: the window probe must yield a checkable witness

    def test_zero_codegree_branch(self):
        from ekrlab.constructions import _gap_probe_k1, CountingOracle
        from ekrlab.masks import fill_to_size

        fam = Family.from_labels(
            FamilyParams(11, 3), [[1, 2, 3], [1, 4, 5], [2, 4, 5], [3, 4, 5]]
        )
        o = CountingOracle(ExplicitOracle(fam))
        window = fill_to_size(mask_of([1, 2, 3, 4, 5]), 8, full_mask(11))
        viol = _gap_probe_k1(o, fam.edges, mask_of([1, 2, 3, 4, 5]), window)
        assert isinstance(viol, ZeroCodegree) and viol.verify(o)

    def test_disjoint_edges_branch(self):
        from ekrlab.constructions import _gap_probe_k1, CountingOracle
        from ekrlab.masks import fill_to_size

        fam = Family.from_labels(
            FamilyParams(11, 3),
            [[1, 2, 3], [1, 4, 5], [2, 4, 5], [3, 4, 5], [9, 10, 11]],
        )
        ctx = Family.from_labels(FamilyParams(11, 3), [[1, 2, 3], [1, 4, 5], [2, 4, 5], [3, 4, 5]])
        o = CountingOracle(ExplicitOracle(fam))
        window = fill_to_size(mask_of([1, 2, 3, 4, 5]), 8, full_mask(11))
        viol = _gap_probe_k1(o, ctx.edges, mask_of([1, 2, 3, 4, 5]), window)
        assert isinstance(viol, DisjointEdges) and viol.verify(o)
