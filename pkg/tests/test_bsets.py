from __future__ import annotations

import pytest

from expected import (
    B2_SET,
    B3_SET,
    BSET_STATS_TABLE,
    CUBE_TAILS_COMPUTED,
    A000534_PREFIX,
    a000534_below,
)
from conftest import oracle_representable
from waring import (
    BSet,
    InconclusiveError,
    PreconditionError,
    ThreeSquares,
    bset_stats,
    check_chain_inclusion,
    check_conjectures,
    check_consistency,
    classify_four_squares,
    classify_three_squares,
    extract_bset,
    fermat_lower_bound,
    reduce_bset,
    sieve_exact,
    stabilization_bound,
    stabilize,
    three_cubes_obstruction,
)


class TestExtract:
    def test_two_squares_window(self):
        bs = extract_bset(sieve_exact(2, 2, 11))
        assert bs.elements == (1, 3, 4, 6, 7, 9)
        assert not bs.complete

    def test_six_squares_window(self):
        # brute force attaches the {7,8,10,...} tail to j=6, not j=7
        bs = extract_bset(sieve_exact(2, 6, 100))
        assert bs.elements == (1, 2, 3, 4, 5, 7, 8, 10, 11, 13, 16, 19)

    def test_seven_squares_window(self):
        bs = extract_bset(sieve_exact(2, 7, 100))
        assert bs.elements == (1, 2, 3, 4, 5, 6, 8, 9, 11, 12, 14, 17, 20)


@pytest.fixture(scope="module")
def cube_base(stabilized_small):
    return stabilized_small[3].bset


class TestReduce:
    @pytest.mark.parametrize("j", sorted(CUBE_TAILS_COMPUTED))
    def test_cube_tails_match_independent_truth(self, j, cube_base):
        tail = reduce_bset(extract_bset(sieve_exact(3, j, 10**4)), cube_base)
        assert tail.elements == CUBE_TAILS_COMPUTED[j]

    def test_disputed_members_really_are_exceptions(self):
        # spot-confirm the elements the computed tails add over the published
        # rows, with the independent recursive oracle
        assert not oracle_representable(134 + 10, 10, 3)
        assert oracle_representable(134 + 11, 11, 3)
        for beta in (108, 127, 134, 146):
            assert not oracle_representable(beta + 9, 9, 3)

    def test_empty_tail_at_fourteen(self, cube_base):
        tail = reduce_bset(extract_bset(sieve_exact(3, 14, 10**4)), cube_base)
        assert tail.elements == ()

    def test_reduction_composes_with_extract(self, stabilized_small):
        base2 = stabilized_small[2].bset
        for j in (6, 7, 8):
            tail = reduce_bset(extract_bset(sieve_exact(2, j, 10**4)), base2)
            assert tail.elements == ()


class TestConsistency:
    def test_squares_at_six(self):
        b6 = extract_bset(sieve_exact(2, 6, 10**4))
        b7 = extract_bset(sieve_exact(2, 7, 10**4))
        verdict = check_consistency(b6, b7)
        assert verdict.stabilized
        assert (verdict.m, verdict.floor_scaled, verdict.floor_max) == (19, 4, 4)

    def test_cubes_not_stabilized_at_thirteen(self):
        b13 = extract_bset(sieve_exact(3, 13, 10**4))
        b14 = extract_bset(sieve_exact(3, 14, 10**4))
        verdict = check_consistency(b13, b14)
        assert not verdict.condition1 and not verdict.stabilized

    def test_window_guard(self):
        lo = BSet(k=2, j=3, limit=40, elements=(1, 2, 38))
        hi = BSet(k=2, j=4, limit=40, elements=(1, 2, 3, 39))
        with pytest.raises(InconclusiveError):
            check_consistency(lo, hi)

    def test_requires_consecutive_j(self):
        b6 = extract_bset(sieve_exact(2, 6, 1000))
        with pytest.raises(PreconditionError):
            check_consistency(b6, b6)


class TestChainInclusion:
    def test_cube_pair(self):
        b12 = extract_bset(sieve_exact(3, 12, 10**4))
        b13 = extract_bset(sieve_exact(3, 13, 10**4))
        assert check_chain_inclusion(b12, b13)

    def test_square_pair(self):
        b5 = extract_bset(sieve_exact(2, 5, 10**4))
        b6 = extract_bset(sieve_exact(2, 6, 10**4))
        assert check_chain_inclusion(b5, b6)
        # the j=5 shifted set carries exactly one extra element: 28
        extra = set(b5.shifted()) - set(b6.shifted())
        assert extra == {28}

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_sweep_small_windows(self, k):
        prev = extract_bset(sieve_exact(k, 1, 5000))
        for j in range(2, 9):
            cur = extract_bset(sieve_exact(k, j, 5000))
            assert check_chain_inclusion(prev, cur), f"(j={j - 1} -> {j}, k={k})"
            prev = cur


class TestStabilize:
    def test_squares(self, stabilized_small):
        res = stabilized_small[2]
        assert res.stabilized_at == 6
        assert res.bset.elements == B2_SET
        assert res.bset.complete

    def test_cubes(self, stabilized_small):
        res = stabilized_small[3]
        assert res.stabilized_at == 14
        assert res.bset.elements == B3_SET

    def test_no_stabilization_within_jmax(self):
        res = stabilize(3, 2000, 4)
        assert not res.stabilized and res.bset is None
        assert len(res.steps) == 4

    def test_steps_record_conclusiveness(self, stabilized_small):
        steps = stabilized_small[2].steps
        assert [s.j for s in steps] == list(range(1, 7))
        assert not steps[0].conclusive  # j=1 complement touches the window
        assert steps[-1].condition1 and steps[-1].condition2


class TestStabilizationBound:
    def test_values(self):
        assert stabilization_bound(19, 2) == 7
        assert stabilization_bound(149, 3) == 22
        assert stabilization_bound(13, 2) == 5

    def test_bad_args(self):
        with pytest.raises(PreconditionError):
            stabilization_bound(0, 2)


class TestFourSquares:
    def test_family_members(self):
        assert classify_four_squares(224)  # 14 * 16
        assert classify_four_squares(96)  # 6 * 16
        assert not classify_four_squares(100)

    def test_prefix_matches_published_terms(self):
        assert tuple(a000534_below(225)) == A000534_PREFIX

    def test_matches_sieve_below_10k(self):
        comp = [int(n) for n in extract_bset(sieve_exact(2, 4, 10**4)).elements]
        assert comp == a000534_below(10**4)
        assert comp == [n for n in range(1, 10**4) if classify_four_squares(n)]


class TestThreeSquares:
    def test_examples(self):
        assert classify_three_squares(7) is ThreeSquares.OBSTRUCTION_8M7
        assert classify_three_squares(40) is ThreeSquares.IN_T_FAMILY
        assert classify_three_squares(27) is ThreeSquares.REPRESENTABLE

    def test_matches_sieve_below_10k(self):
        sieve = sieve_exact(2, 3, 10**4)
        for n in range(1, 10**4):
            representable = classify_three_squares(n) is ThreeSquares.REPRESENTABLE
            assert representable == sieve.test(n), n


class TestThreeCubes:
    def test_examples(self):
        assert three_cubes_obstruction(4)
        assert three_cubes_obstruction(31)
        assert not three_cubes_obstruction(36)

    def test_obstruction_implies_clear_bit(self):
        sieve = sieve_exact(3, 3, 10**5)
        for n in range(1, 10**5):
            if three_cubes_obstruction(n):
                assert not sieve.test(n), n


class TestFermatBound:
    def test_values(self):
        assert fermat_lower_bound(11) == 129687123005
        assert fermat_lower_bound(3) == 9
        assert fermat_lower_bound(5) == 1250

    @pytest.mark.parametrize("p", [2, 4, 9, 1, 15])
    def test_rejects_non_odd_primes(self, p):
        with pytest.raises(PreconditionError):
            fermat_lower_bound(p)


class TestStatsAndConjectures:
    def test_squares(self, stabilized_small):
        stats = bset_stats(stabilized_small[2].bset)
        assert (stats.max_element, stats.size) == BSET_STATS_TABLE[2]
        flags = check_conjectures(stabilized_small[2].bset)
        assert flags == {"sizemax": True, "reverse": True, "odd_parity": True}

    def test_cubes(self, stabilized_small):
        stats = bset_stats(stabilized_small[3].bset)
        assert (stats.max_element, stats.size) == BSET_STATS_TABLE[3]

    def test_sizemax_fails_for_fifths(self):
        res = stabilize(5, 2 * 10**4, 60)
        assert (res.bset.max_element, res.bset.size) == BSET_STATS_TABLE[5]
        assert not check_conjectures(res.bset)["sizemax"]
