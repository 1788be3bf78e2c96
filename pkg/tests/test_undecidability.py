"""Tie rules, tally enumeration, and the three undecidability estimators.

The central theorem here is oracle equivalence: the composition enumeration
and the all-sequences brute force are independent computations of the same
quantity and must agree to 1e-10 on every small model.
"""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from miscount import (
    EstimateWithError,
    EnumerationBudgetError,
    OutcomeTally,
    TieRule,
    composition_count,
    decide_count,
    is_undecidable,
    make_point_error_model,
    make_symmetric_geometric_model,
    p_third_count_needed,
    p_un_bruteforce,
    p_un_enumerate,
    p_un_montecarlo,
    tally_terms,
    weak_compositions,
    OffsetDistribution,
)

MODE = TieRule.mode_tie()
BAND0 = TieRule.tolerance_band(0)
BAND1 = TieRule.tolerance_band(1)


def tally(*entries):
    return OutcomeTally(entries=tuple(entries), total=sum(k for _, k in entries))


class TestTieRules:
    def test_rejects_unknown_kind(self):
        with pytest.raises(ValueError, match="kind"):
            TieRule(kind="plurality")

    def test_rejects_negative_tolerance(self):
        with pytest.raises(ValueError, match="tolerance"):
            TieRule.tolerance_band(-1)

    def test_mode_tie_symmetric_split(self):
        assert is_undecidable(tally((0, 2), (1, 2)), MODE)

    def test_mode_tie_unique_winner(self):
        assert not is_undecidable(tally((0, 3), (1, 1)), MODE)

    def test_band_widens_with_tolerance(self):
        t = tally((0, 3), (1, 1))
        assert is_undecidable(t, TieRule.tolerance_band(2))
        assert not is_undecidable(t, TieRule.tolerance_band(1))

    def test_single_group_never_ties(self):
        t = tally((0, 4))
        assert not is_undecidable(t, MODE)
        assert not is_undecidable(t, BAND0)

    def test_band_json_keeps_tolerance(self):
        assert BAND1.as_json_dict() == {"kind": "tolerance_band", "tolerance": 1}
        assert MODE.as_json_dict() == {"kind": "mode_tie"}


class TestOutcomeTally:
    def test_from_offsets_groups_and_sorts(self):
        t = OutcomeTally.from_offsets([1, 0, 1, -1, 1])
        assert t.entries == ((-1, 1), (0, 1), (1, 3))
        assert t.total == 5

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            OutcomeTally.from_offsets([])

    def test_rejects_bad_total(self):
        with pytest.raises(ValueError, match="total"):
            OutcomeTally(entries=((0, 2),), total=3)

    def test_rejects_zero_multiplicity(self):
        with pytest.raises(ValueError, match="multiplicities"):
            OutcomeTally(entries=((0, 0), (1, 2)), total=2)


class TestDecideCount:
    def test_unique_mode_decides(self):
        assert decide_count([0, 0, 1], MODE).offset == 0

    def test_even_split_undecided(self):
        decision = decide_count([0, 1], MODE)
        assert not decision.decided and decision.offset is None

    def test_decision_can_be_wrong(self):
        # Both observed values are errors; the plurality still picks one.
        assert decide_count([1, 1, -1], MODE).offset == 1

    def test_band_pass_with_tied_mode_stays_undecided(self):
        # Spread 2 exceeds tolerance 1, but the top multiplicity is shared.
        assert not decide_count([0, 0, 0, 1, 1, 1, 2], BAND1).decided


class TestWeakCompositions:
    @pytest.mark.parametrize("total,parts", [(0, 1), (4, 1), (4, 2), (4, 3), (6, 4), (3, 5)])
    def test_counts_and_uniqueness(self, total, parts):
        comps = list(weak_compositions(total, parts))
        assert len(comps) == composition_count(total, parts)
        assert len(set(comps)) == len(comps)
        assert all(sum(c) == total and len(c) == parts for c in comps)
        assert all(min(c) >= 0 for c in comps)

    def test_lexicographic_order(self):
        comps = list(weak_compositions(4, 3))
        assert comps == sorted(comps)

    def test_matches_recursive_reference(self):
        def reference(total, parts):
            if parts == 1:
                yield (total,)
                return
            for head in range(total + 1):
                for rest in reference(total - head, parts - 1):
                    yield (head,) + rest

        assert list(weak_compositions(5, 4)) == list(reference(5, 4))


class TestEnumerate:
    def test_two_counts_reduce_to_disagreement(self, any_model):
        # Two differing counts always tie 1-1, so n=2 undecidability is
        # exactly the probability of disagreement.
        expected = p_third_count_needed(any_model)
        assert p_un_enumerate(any_model, 2, MODE) == pytest.approx(expected, abs=1e-12)

    def test_even_split_point_half(self, point_half):
        # Derived by brute force over all 2**4 sequences: only 2-2 ties.
        assert p_un_enumerate(point_half, 4, MODE) == pytest.approx(0.375, abs=1e-15)

    def test_odd_counts_band_zero(self, point_half):
        # No equal split of an odd count over two values.
        assert p_un_enumerate(point_half, 3, BAND0) == 0.0

    def test_error_free_never_undecidable(self):
        model = make_point_error_model(0.0, +1)
        for n in (1, 2, 5):
            assert p_un_enumerate(model, n, MODE) == 0.0

    def test_single_count_degenerate(self, any_model):
        assert p_un_enumerate(any_model, 1, MODE) == 0.0
        assert p_un_enumerate(any_model, 1, BAND0) == 0.0

    def test_budget_rejection(self, point_half):
        with pytest.raises(EnumerationBudgetError, match="compositions"):
            p_un_enumerate(point_half, 4, MODE, budget=3)

    def test_band_monotone_in_tolerance(self, three_value):
        values = [
            p_un_enumerate(three_value, 6, TieRule.tolerance_band(t)) for t in range(0, 7)
        ]
        assert all(b >= a - 1e-15 for a, b in zip(values, values[1:]))

    def test_range(self, any_model):
        for rule in (MODE, BAND0, BAND1):
            value = p_un_enumerate(any_model, 5, rule)
            assert 0.0 <= value <= 1.0


class TestBookkeeping:
    def test_tally_terms_cover_everything(self, any_model):
        n = 6
        terms = list(tally_terms(any_model, n))
        assert len(terms) == composition_count(n, len(any_model.support))
        assert len({t.entries for t, _ in terms}) == len(terms)
        assert abs(sum(p for _, p in terms) - 1.0) <= 1e-10

    def test_terms_split_into_rule_classes(self, three_value):
        n = 5
        total_tie = sum(p for t, p in tally_terms(three_value, n) if is_undecidable(t, MODE))
        assert total_tie == pytest.approx(p_un_enumerate(three_value, n, MODE), abs=1e-12)


class TestOracleEquivalence:
    @pytest.mark.parametrize("rule", [MODE, BAND0, BAND1], ids=["mode", "band0", "band1"])
    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 8])
    def test_small_models_agree(self, any_model, n, rule):
        if len(any_model.support) ** n > 10**6:
            pytest.skip("oracle too large for routine runs")
        exact = p_un_enumerate(any_model, n, rule)
        brute = p_un_bruteforce(any_model, n, rule)
        assert abs(exact - brute) <= 1e-10

    @given(
        table=st.lists(
            st.floats(min_value=0.05, max_value=1.0), min_size=2, max_size=4
        ),
        n=st.integers(min_value=1, max_value=6),
        rule=st.sampled_from([MODE, BAND0, BAND1]),
    )
    @settings(max_examples=40, deadline=None)
    def test_random_models_agree(self, table, n, rule):
        offsets = [0, 1, -1, 2][: len(table)]
        total = sum(table)
        model = OffsetDistribution.from_table(
            {d: w / total for d, w in zip(offsets, table)}
        )
        assert abs(
            p_un_enumerate(model, n, rule) - p_un_bruteforce(model, n, rule)
        ) <= 1e-10

    def test_bruteforce_budget_rejection(self):
        model = make_symmetric_geometric_model(0.5, 0.5, -2, 2)
        with pytest.raises(EnumerationBudgetError, match="sequences"):
            p_un_bruteforce(model, 11, MODE)


class TestMonteCarlo:
    def test_error_free_estimate(self):
        model = make_point_error_model(0.0, +1)
        result = p_un_montecarlo(model, 4, MODE, trials=1000, seed=0)
        assert result.estimate == 0.0 and result.std_error == 0.0

    def test_matches_exact_within_five_sigma(self, point_half):
        result = p_un_montecarlo(point_half, 4, MODE, trials=10**6, seed=13)
        assert abs(result.estimate - 0.375) <= 5 * result.std_error

    def test_band_rule_matches_exact(self, three_value):
        exact = p_un_enumerate(three_value, 5, BAND1)
        result = p_un_montecarlo(three_value, 5, BAND1, trials=2 * 10**5, seed=21)
        assert abs(result.estimate - exact) <= 5 * max(result.std_error, 1e-6)

    def test_deterministic_under_seed(self, three_value):
        a = p_un_montecarlo(three_value, 4, MODE, trials=50_000, seed=99)
        b = p_un_montecarlo(three_value, 4, MODE, trials=50_000, seed=99)
        assert a == b

    def test_chunking_does_not_change_results(self, three_value, monkeypatch):
        import miscount.undecidability as mod

        whole = p_un_montecarlo(three_value, 4, MODE, trials=30_000, seed=5)
        monkeypatch.setattr(mod, "_MC_CHUNK_CELLS", 4096)
        chunked = p_un_montecarlo(three_value, 4, MODE, trials=30_000, seed=5)
        assert whole == chunked

    def test_million_trials_consistent_on_every_model(self, any_model):
        # Degenerate models return std_error 0 and must match exactly.
        exact = p_un_enumerate(any_model, 4, MODE)
        result = p_un_montecarlo(any_model, 4, MODE, trials=10**6, seed=11)
        assert abs(result.estimate - exact) <= 5 * result.std_error


class TestEstimateWithError:
    def test_from_successes(self):
        est = EstimateWithError.from_successes(25, 100)
        assert est.estimate == 0.25
        assert est.std_error == math.sqrt(0.25 * 0.75 / 100)

    def test_rejects_inconsistent_std_error(self):
        with pytest.raises(ValueError, match="std_error"):
            EstimateWithError(estimate=0.5, std_error=0.5, trials=100)

    def test_rejects_no_trials(self):
        with pytest.raises(ValueError, match="trials"):
            EstimateWithError(estimate=0.0, std_error=0.0, trials=0)
