"""Combinatorial primitives: binomials, subset enumeration/ranking, and
the lower convex envelope against a brute-force pairwise oracle."""

import random
from fractions import Fraction
from itertools import combinations

import pytest

from codedcache.combin import (
    binomial,
    enumerate_subsets,
    lower_convex_envelope,
    subset_rank,
    subset_unrank,
    subsets_containing,
)


def envelope_oracle(points, x):
    """Independent reference: the lower convex envelope value at x is the
    minimum over all single points at x and all straddling point pairs of
    the linear interpolation at x."""
    pts = [(Fraction(a), Fraction(b)) for a, b in points]
    best = None
    for (xa, ya), (xb, yb) in combinations(sorted(pts), 2):
        if xa <= x <= xb and xa != xb:
            value = ya + (yb - ya) * (x - xa) / (xb - xa)
            best = value if best is None else min(best, value)
    for xa, ya in pts:
        if xa == x:
            best = ya if best is None else min(best, ya)
    assert best is not None, f"oracle query {x} outside the point range"
    return best


class TestBinomial:
    def test_small_values(self):
        assert binomial(5, 2) == 10
        assert binomial(2, 1) == 2
        assert binomial(4, 3) == 4

    @pytest.mark.parametrize("n", [0, 1, 5, 17])
    def test_choose_zero(self, n):
        assert binomial(n, 0) == 1

    def test_out_of_range_k_is_zero(self):
        assert binomial(3, -1) == 0
        assert binomial(3, 4) == 0
        assert binomial(0, 1) == 0

    def test_negative_n_rejected(self):
        with pytest.raises(ValueError):
            binomial(-1, 0)

    def test_pascal_identity(self):
        for n in range(1, 13):
            for k in range(0, n + 1):
                assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)


class TestSubsetEnumeration:
    def test_golden_pairs_of_three(self):
        assert enumerate_subsets(3, 2) == [(1, 2), (1, 3), (2, 3)]

    def test_full_set(self):
        assert enumerate_subsets(3, 3) == [(1, 2, 3)]

    def test_pairs_of_four(self):
        subsets = enumerate_subsets(4, 2)
        assert len(subsets) == 6
        assert subsets[0] == (1, 2)
        assert subsets[-1] == (3, 4)

    def test_lexicographic_and_counted(self):
        for n in range(1, 8):
            for g in range(1, n + 1):
                subsets = enumerate_subsets(n, g)
                assert subsets == sorted(subsets)
                assert len(subsets) == binomial(n, g)
                assert len(set(subsets)) == len(subsets)

    def test_oversized_is_empty(self):
        assert enumerate_subsets(2, 3) == []


class TestSubsetsContaining:
    def test_golden(self):
        assert subsets_containing(3, 2, 1) == [(1, 2), (1, 3)]
        assert subsets_containing(3, 2, 3) == [(1, 3), (2, 3)]
        assert subsets_containing(5, 1, 4) == [(4,)]

    def test_matches_filtered_enumeration(self):
        for n in range(1, 8):
            for g in range(1, n + 1):
                for member in range(1, n + 1):
                    direct = subsets_containing(n, g, member)
                    filtered = [s for s in enumerate_subsets(n, g) if member in s]
                    assert direct == filtered
                    assert len(direct) == binomial(n - 1, g - 1)

    def test_bad_member_rejected(self):
        with pytest.raises(ValueError):
            subsets_containing(3, 2, 0)
        with pytest.raises(ValueError):
            subsets_containing(3, 2, 4)


class TestSubsetRanking:
    def test_round_trip_matches_enumeration(self):
        for n in range(1, 8):
            for g in range(1, n + 1):
                for expect, subset in enumerate(enumerate_subsets(n, g)):
                    assert subset_rank(n, subset) == expect
                    assert subset_unrank(n, g, expect) == subset

    def test_rank_out_of_range(self):
        with pytest.raises(ValueError):
            subset_unrank(4, 2, 6)
        with pytest.raises(ValueError):
            subset_rank(3, (2, 2))


class TestLowerConvexEnvelope:
    def test_interpolated_golden_value(self):
        env = lower_convex_envelope(
            [(0, 3), (Fraction(1, 6), Fraction(5, 2)), (Fraction(7, 15), 2)]
        )
        assert env(Fraction(1, 4)) == Fraction(85, 36)

    def test_single_point(self):
        env = lower_convex_envelope([(0, 3)])
        assert env(0) == 3
        with pytest.raises(ValueError):
            env(Fraction(1, 2))

    def test_collinear_points(self):
        env = lower_convex_envelope([(0, 2), (1, 1), (2, 0)])
        assert env(1) == 1
        assert env(Fraction(1, 2)) == Fraction(3, 2)

    def test_dominated_point_dropped(self):
        env = lower_convex_envelope([(0, 2), (1, 3), (2, 0)])
        assert env(1) == 1
        assert all(v != (Fraction(1), Fraction(3)) for v in env.vertices)

    def test_query_outside_domain(self):
        env = lower_convex_envelope([(0, 2), (1, 1)])
        with pytest.raises(ValueError):
            env(Fraction(3, 2))
        with pytest.raises(ValueError):
            env(-1)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            lower_convex_envelope([])

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            lower_convex_envelope([(0, -1)])
        with pytest.raises(ValueError):
            lower_convex_envelope([(-1, 0)])

    def test_random_sets_match_pairwise_oracle(self):
        rng = random.Random(20240817)
        for _ in range(40):
            points = [
                (Fraction(rng.randint(0, 30), rng.randint(1, 9)),
                 Fraction(rng.randint(0, 30), rng.randint(1, 9)))
                for _ in range(rng.randint(2, 10))
            ]
            env = lower_convex_envelope(points)
            lo, hi = env.domain
            queries = {lo, hi}
            for _ in range(8):
                t = Fraction(rng.randint(0, 64), 64)
                queries.add(lo + (hi - lo) * t)
            for x in queries:
                assert env(x) == envelope_oracle(points, x)

    def test_slopes_nondecreasing_and_below_all_points(self):
        rng = random.Random(99)
        for _ in range(30):
            points = [
                (Fraction(rng.randint(0, 20), rng.randint(1, 7)),
                 Fraction(rng.randint(0, 20), rng.randint(1, 7)))
                for _ in range(rng.randint(1, 9))
            ]
            env = lower_convex_envelope(points)
            verts = env.vertices
            slopes = [
                (verts[i + 1][1] - verts[i][1]) / (verts[i + 1][0] - verts[i][0])
                for i in range(len(verts) - 1)
            ]
            assert all(a < b for a, b in zip(slopes, slopes[1:])), slopes
            for x, y in points:
                assert env(x) <= y
