from math import comb

import pytest

from conftest import brute_force_maximal_families, ref_is_maximal_intersecting
from ekrlab.canonical import canonical_form
from ekrlab.family import covers_size1, is_intersecting
from ekrlab.generators import (
    ResourceLimitError,
    complete_star,
    enumerate_maximal_intersecting,
    enumeration_report,
    hilton_milner,
    is_maximal_intersecting,
    random_maximal_intersecting,
)
from ekrlab.masks import iter_ksubsets, labels, mask_of
from ekrlab.oracles import min_degree


class TestCompleteStar:
    def test_small_sizes(self):
        assert len(complete_star(5, 2, 1)) == 4
        assert len(complete_star(7, 3, 1)) == 15

    def test_min_vertex_degree_is_one(self):
        assert min_degree(complete_star(5, 2, 1), 1)[0] == 1

    def test_all_edges_contain_center(self):
        star = complete_star(8, 3, 5)
        assert all(e & mask_of([5]) for e in star.edges)
        assert len(star) == comb(7, 2)

    def test_bad_center(self):
        with pytest.raises(ValueError):
            complete_star(5, 2, 6)


class TestHiltonMilner:
    def test_size_formula(self):
        assert len(hilton_milner(7, 3)) == comb(6, 2) - comb(3, 2) + 1 == 13

    def test_intersecting_not_star(self):
        hm = hilton_milner(7, 3)
        assert is_intersecting(hm)
        common, _ = covers_size1(hm)
        assert common == 0

    def test_threshold_guard(self):
        with pytest.raises(ValueError):
            hilton_milner(6, 3)


class TestRandomMaximal:
    def test_deterministic(self):
        assert random_maximal_intersecting(6, 3, 7) == random_maximal_intersecting(6, 3, 7)

    def test_saturated(self, rng):
        for seed in range(10):
            f = random_maximal_intersecting(6, 3, seed)
            assert ref_is_maximal_intersecting(f)

    def test_below_2k_full_family(self):
        f = random_maximal_intersecting(5, 3, 123)
        assert len(f) == 10


class TestEnumeration:
    def test_single_class_below_2k(self):
        fams = list(enumerate_maximal_intersecting(5, 3))
        assert len(fams) == 1 and len(fams[0]) == 10

    def test_6_2_census(self):
        # 6 stars + C(6,3) = 20 triangle families
        fams = list(enumerate_maximal_intersecting(6, 2))
        assert len(fams) == 26
        sizes = sorted(len(f) for f in fams)
        assert sizes.count(3) == 20 and sizes.count(5) == 6

    @pytest.mark.parametrize("n,k", [(4, 2), (5, 2), (6, 2), (5, 3)])
    def test_exhaustive_vs_subset_bruteforce(self, n, k):
        got = {f.edges for f in enumerate_maximal_intersecting(n, k)}
        assert got == brute_force_maximal_families(n, k)

    def test_emitted_families_are_maximal(self):
        for f in enumerate_maximal_intersecting(6, 3):
            assert is_maximal_intersecting(f)

    def test_7_3_against_networkx(self):
        import networkx as nx

        edges = list(iter_ksubsets(7, 3))
        g = nx.Graph()
        g.add_nodes_from(range(len(edges)))
        for i in range(len(edges)):
            for j in range(i + 1, len(edges)):
                if edges[i] & edges[j]:
                    g.add_edge(i, j)
        nx_count = sum(1 for _ in nx.find_cliques(g))
        own = sum(1 for _ in enumerate_maximal_intersecting(7, 3))
        assert own == nx_count

    def test_guard(self):
        with pytest.raises(ResourceLimitError, match=r"C\(30,7\)"):
            next(enumerate_maximal_intersecting(30, 7))

    def test_report(self):
        rep = enumeration_report(6, 2)
        assert rep.families_found == 26
        assert rep.max_delta[1][0] == 1


class TestCanonicalDedup:
    def test_6_2_classes(self):
        fams = list(enumerate_maximal_intersecting(6, 2, "canonical"))
        assert len(fams) == 2  # star and triangle

    def test_4_2_and_5_3(self):
        assert len(list(enumerate_maximal_intersecting(4, 2, "canonical"))) == 2
        assert len(list(enumerate_maximal_intersecting(5, 3, "canonical"))) == 1

    def test_representatives_pairwise_nonisomorphic(self):
        from itertools import permutations

        for n, k in [(4, 2), (5, 2), (6, 2)]:
            reps = [f.edges for f in enumerate_maximal_intersecting(n, k, "canonical")]
            for i in range(len(reps)):
                for j in range(i + 1, len(reps)):
                    for perm in permutations(range(1, n + 1)):
                        mapped = tuple(
                            sorted(
                                sum(1 << (perm[v - 1] - 1) for v in labels(e)) for e in reps[i]
                            )
                        )
                        assert mapped != reps[j]

    def test_canonical_form_invariant_under_relabeling(self, rng):
        from conftest import random_family

        for _ in range(40):
            n = rng.randrange(3, 8)
            k = rng.randrange(2, min(4, n) + 1)
            f = random_family(rng, n, k, rng.randrange(1, 8))
            base = canonical_form(n, f.edges)
            perm = list(range(1, n + 1))
            rng.shuffle(perm)
            mapped = tuple(
                sorted(sum(1 << (perm[v - 1] - 1) for v in labels(e)) for e in f.edges)
            )
            assert canonical_form(n, mapped) == base

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            next(enumerate_maximal_intersecting(5, 2, "weird"))


def test_reduction_soundness_tiny_scale():
    # max of delta_d over every intersecting family equals the max over
    # maximal ones (degree monotonicity makes the enumerator sufficient)
    from itertools import combinations

    from ekrlab.family import Family, FamilyParams

    for n, k, d in [(5, 2, 1), (4, 2, 1), (5, 3, 1), (5, 3, 2)]:
        edges = list(iter_ksubsets(n, k))
        best_all = -1
        for r in range(1, len(edges) + 1):
            for combo in combinations(edges, r):
                if all(a & b for a, b in combinations(combo, 2)):
                    fam = Family(FamilyParams(n, k), combo)
                    best_all = max(best_all, min_degree(fam, d)[0])
        best_maximal = max(
            min_degree(f, d)[0] for f in enumerate_maximal_intersecting(n, k)
        )
        assert best_all == best_maximal
