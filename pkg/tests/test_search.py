"""Exhaustive and branch-and-bound subset maximization."""

from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import trisplit.search
from trisplit import (
    Digraph,
    SplitMix64,
    BudgetExceeded,
    VertexSet,
    branch_bound_max,
    enumerate_max,
    fixed_popcount_masks,
    punctured_tournament,
    subset_count,
    ternary_tournament,
    verify_bound,
    witness_extremal,
)

from naive import naive_max_over_sizes, random_digraph, random_tournament


def from_arcset(arcs, n):
    return Digraph.from_arcs(n, sorted(arcs))


class TestMaskIteration:
    @pytest.mark.parametrize("n", range(0, 11))
    def test_matches_combinations(self, n):
        for m in range(n + 1):
            ref = [sum(1 << i for i in combo)
                   for combo in combinations(range(n), m)]
            got = list(fixed_popcount_masks(n, m))
            assert got == sorted(ref) == sorted(got)

    def test_size_zero_and_overfull(self):
        assert list(fixed_popcount_masks(5, 0)) == [0]
        assert list(fixed_popcount_masks(3, 4)) == []

    def test_counts(self):
        assert subset_count(10, range(4)) == 1 + 10 + 45 + 120
        assert subset_count(27, range(14)) == 1 << 26


class TestEnumerate:
    def test_family_examples(self):
        assert enumerate_max(ternary_tournament(1), range(2)).best_value == 0
        r = enumerate_max(ternary_tournament(2), range(5))
        assert r.best_value == 1
        assert r.nodes_visited == 256
        assert r.exact

    def test_directed_triangle_full(self):
        tri = Digraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)])
        assert enumerate_max(tri, 3).best_value == 1

    def test_single_size_is_int_or_iterable(self):
        t1 = ternary_tournament(1)
        assert enumerate_max(t1, 2).best_value == enumerate_max(t1, [2]).best_value

    def test_empty_family_only(self):
        r = enumerate_max(ternary_tournament(1), 0)
        assert r.best_value == 0 and len(r.best_set) == 0

    def test_budget_refusal_is_up_front(self):
        t2 = ternary_tournament(2)
        with pytest.raises(BudgetExceeded) as exc:
            enumerate_max(t2, range(5), budget=100)
        assert exc.value.required == 256
        assert exc.value.budget == 100

    def test_bad_sizes(self):
        t1 = ternary_tournament(1)
        with pytest.raises(ValueError):
            enumerate_max(t1, 4)
        with pytest.raises(ValueError):
            enumerate_max(t1, [])
        with pytest.raises(ValueError):
            enumerate_max(t1, 1, engine="warp")

    def test_engines_agree_including_witness(self):
        rng = SplitMix64(20260817)
        for trial in range(25):
            n = 2 + rng.next_below(8)
            arcs = random_digraph(rng, n)
            d = from_arcset(arcs, n)
            sizes = range(n + 1)
            a = enumerate_max(d, sizes, engine="blocks")
            b = enumerate_max(d, sizes, engine="gosper")
            assert a.best_value == b.best_value
            assert a.best_set == b.best_set
            assert a.by_size == b.by_size

    def test_matches_naive_oracle(self):
        rng = SplitMix64(7)
        for trial in range(15):
            n = 1 + rng.next_below(7)
            arcs = random_digraph(rng, n)
            d = from_arcset(arcs, n)
            want_v, want_w = naive_max_over_sizes(arcs, n, range(n + 1))
            got = enumerate_max(d, range(n + 1))
            assert got.best_value == want_v
            assert got.best_set.ids() == want_w

    def test_monotone_sweep_consistency(self):
        d = punctured_tournament(2)
        sweep = enumerate_max(d, range(5))
        per_size = [enumerate_max(d, m) for m in range(5)]
        assert sweep.best_value == max(r.best_value for r in per_size)
        for m, r in enumerate(per_size):
            assert sweep.by_size[m] == r.by_size[m]

    def test_tournament_ceiling(self):
        rng = SplitMix64(99)
        for trial in range(10):
            n = 3 + rng.next_below(8)
            d = from_arcset(random_tournament(rng, n), n)
            for m in range(1, n + 1):
                assert enumerate_max(d, m).best_value <= (m - 1) // 2

    def test_threads_do_not_change_results(self, monkeypatch):
        monkeypatch.setattr(trisplit.search, "_CHUNK", 512)
        d = ternary_tournament(2)
        lone = enumerate_max(d, range(5), threads=1)
        team = enumerate_max(d, range(5), threads=4)
        assert (lone.best_value, lone.best_set, lone.by_size) == \
               (team.best_value, team.best_set, team.by_size)

    def test_gosper_handles_more_than_64_vertices(self):
        d = Digraph.from_arcs(70, [(i, (i + 1) % 70) for i in range(70)])
        r = enumerate_max(d, 2)
        assert r.best_value == 0
        assert r.nodes_visited == comb(70, 2)
        with pytest.raises(ValueError):
            enumerate_max(d, 2, engine="blocks")


class TestBranchBound:
    def test_family_examples(self):
        assert branch_bound_max(ternary_tournament(2), 4).best_value == 1
        assert branch_bound_max(ternary_tournament(2), 1).best_value == 0
        assert branch_bound_max(punctured_tournament(1), 1).best_value == 0

    def test_size_zero(self):
        r = branch_bound_max(ternary_tournament(1), 0)
        assert r.best_value == 0 and len(r.best_set) == 0

    def test_target_out_of_range(self):
        with pytest.raises(ValueError):
            branch_bound_max(ternary_tournament(1), 4)
        with pytest.raises(ValueError):
            branch_bound_max(ternary_tournament(1), -1)

    def test_agrees_with_enumerate_on_random_digraphs(self):
        rng = SplitMix64(314159)
        for trial in range(30):
            n = 2 + rng.next_below(9)
            d = from_arcset(random_digraph(rng, n), n)
            for m in range(n + 1):
                assert branch_bound_max(d, m).best_value == \
                    enumerate_max(d, m).best_value

    def test_pruning_never_changes_value(self):
        rng = SplitMix64(2718)
        for trial in range(12):
            n = 2 + rng.next_below(7)
            d = from_arcset(random_digraph(rng, n), n)
            for m in range(n + 1):
                fast = branch_bound_max(d, m, prune=True)
                slow = branch_bound_max(d, m, prune=False)
                assert fast.best_value == slow.best_value
                assert fast.nodes_visited <= slow.nodes_visited

    def test_witness_attains_value(self):
        d = punctured_tournament(2)
        for m in range(1, 9):
            r = branch_bound_max(d, m)
            assert d.min_out_degree(r.best_set) == r.best_value
            assert len(r.best_set) == m

    @pytest.mark.slow
    def test_punctured_level_three_half(self):
        # exact value at the counterexample's own scale; equals the
        # level cap, and the exhaustive engine agrees
        r = branch_bound_max(punctured_tournament(3), 13)
        assert r.best_value == 5
        assert r.exact


class TestVerify:
    def test_small_levels(self):
        for k, want in [(0, 0), (1, 0), (2, 1)]:
            out = verify_bound(k)
            assert out.passed is True
            assert out.report.best_value == want
            assert out.report.exact

    def test_budget_refusal_has_no_verdict(self):
        out = verify_bound(4)
        assert out.passed is None
        assert not out.report.exact
        assert out.required == sum(comb(81, i) for i in range(41))

    def test_witness_cache_roundtrip(self):
        trisplit.search._exact_runs.clear()
        with pytest.raises(LookupError):
            witness_extremal(1)
        out = verify_bound(1)
        assert witness_extremal(1).ids() == (0,)
        assert witness_extremal(1, report=out.report) == out.report.best_set

    def test_witness_level_two_frozen(self):
        verify_bound(2)
        assert witness_extremal(2).ids() == (0, 1, 2)

    def test_partial_report_is_rejected_as_witness_source(self):
        out = verify_bound(4)
        with pytest.raises(LookupError):
            witness_extremal(4, report=out.report)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=255), st.integers(min_value=2, max_value=6))
def test_enumerate_property_against_naive(seed, n):
    rng = SplitMix64(seed)
    arcs = random_digraph(rng, n)
    d = from_arcset(arcs, n)
    sizes = range(n + 1)
    want_v, want_w = naive_max_over_sizes(arcs, n, sizes)
    got = enumerate_max(d, sizes)
    assert got.best_value == want_v
    assert got.best_set.ids() == want_w
