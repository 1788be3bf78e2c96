"""Streak probability, the chance baseline, and the binomial tail."""

import math

import pytest
import scipy.stats
from hypothesis import given
from hypothesis import strategies as st

from miscount import (
    GreatnessReport,
    excess_tail,
    expected_greats,
    p_streak,
    simulate_generals,
)


class TestStreakProbability:
    def test_five_even_battles(self):
        assert p_streak(0.5, 5) == 1 / 32 == 0.03125

    def test_empty_streak_certain(self):
        assert p_streak(0.7, 0) == 1.0
        assert p_streak(0.0, 0) == 1.0

    def test_certain_winner(self):
        assert p_streak(1.0, 12) == 1.0

    def test_rejects_bad_probability(self):
        with pytest.raises(ValueError, match="p_win"):
            p_streak(1.2, 3)

    def test_rejects_negative_length(self):
        with pytest.raises(ValueError, match="length"):
            p_streak(0.5, -1)

    @given(
        p=st.floats(min_value=0.01, max_value=1.0),
        a=st.integers(min_value=0, max_value=12),
        b=st.integers(min_value=0, max_value=12),
    )
    def test_multiplicative_in_length(self, p, a, b):
        assert abs(p_streak(p, a + b) - p_streak(p, a) * p_streak(p, b)) <= 1e-12


class TestExpectedGreats:
    def test_hundred_generals(self):
        assert expected_greats(100, 1 / 32) == 3.125

    def test_zero_event(self):
        assert expected_greats(12345, 0.0) == 0.0

    def test_unit_product(self):
        assert expected_greats(32, 1 / 32) == 1.0

    def test_rejects_empty_population(self):
        with pytest.raises(ValueError, match="population"):
            expected_greats(0, 0.5)


class TestExcessTail:
    def test_observing_nothing_is_certain(self):
        report = excess_tail(40, 0.2, 0)
        assert report.tail_probability == pytest.approx(1.0, abs=1e-12)

    def test_perfect_streak_population(self):
        report = excess_tail(5, 0.5, 5)
        assert report.tail_probability == pytest.approx(1 / 32, abs=1e-15)

    def test_matches_scipy_tail(self):
        report = excess_tail(100, 0.03125, 4)
        oracle = scipy.stats.binom.sf(3, 100, 0.03125)
        assert report.tail_probability == pytest.approx(oracle, rel=1e-12)

    def test_monotone_in_observed(self):
        tails = [excess_tail(60, 0.1, j).tail_probability for j in range(0, 61)]
        assert all(b <= a + 1e-15 for a, b in zip(tails, tails[1:]))

    def test_report_fields(self):
        report = excess_tail(100, 0.03125, 4)
        assert report.population == 100
        assert report.expected_greats == 3.125
        assert report.observed_greats == 4

    def test_rejects_observed_above_population(self):
        with pytest.raises(ValueError, match="observed"):
            excess_tail(10, 0.5, 11)

    def test_report_validates_expected(self):
        with pytest.raises(ValueError, match="expected_greats"):
            GreatnessReport(population=10, p_event=0.5, expected_greats=3.0)


class TestSimulateGenerals:
    def test_certain_winners(self):
        result = simulate_generals(1000, 5, 1.0, seed=0)
        assert result.estimate == 1.0 and result.std_error == 0.0

    def test_certain_losers(self):
        result = simulate_generals(1000, 5, 0.0, seed=0)
        assert result.estimate == 0.0

    def test_converges_to_streak_probability(self):
        result = simulate_generals(10**6, 5, 0.5, seed=7)
        assert abs(result.estimate - 0.03125) <= 5 * result.std_error

    def test_deterministic_under_seed(self):
        assert simulate_generals(10**4, 5, 0.5, seed=3) == simulate_generals(10**4, 5, 0.5, seed=3)

    def test_chance_floor_across_replications(self):
        # Mean of many seeded replications sits on the pure-chance rate;
        # chance is the floor, and with nothing pushing wins it is also the mean.
        population, battles, p_win = 10**5, 5, 0.5
        target = p_streak(p_win, battles)
        estimates = [
            simulate_generals(population, battles, p_win, seed=s).estimate
            for s in range(100)
        ]
        mean = sum(estimates) / len(estimates)
        combined_se = math.sqrt(target * (1 - target) / (population * len(estimates)))
        assert abs(mean - target) <= 5 * combined_se
