"""Streak statistics and the chance baseline for "greatness".

A general who wins five even-odds battles in a row clears the bar for
greatness with probability one in thirty-two, so among a hundred generals
pure chance already supplies about three greats. The operations here give
that argument teeth for any event: the streak probability, the expected
number of qualifiers under the chance-only null, an exact binomial tail for
judging an observed count against that null, and a seeded simulation.

Chance is a floor, not a typical value: real qualifier rates can only sit
at or above the null rate, and the closer they sit, the less the label
means. The cascade this implies (ever stricter thresholds collapsing back
to the chance floor) is an argument, not a procedure, so no operation
models it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .undecidability import EstimateWithError

#: The five-even-battles preset: chance alone yields ~3 greats per 100.
FERMI_PRESET = {"battles": 5, "p_win": 0.5, "population": 100}

_SIM_CHUNK_CELLS = 2**25


def p_streak(p_win: float, length: int) -> float:
    """Probability of ``length`` consecutive independent successes."""
    if not 0.0 <= p_win <= 1.0:
        raise ValueError(f"p_win: probability {p_win!r} outside [0, 1]")
    if length < 0:
        raise ValueError(f"length: must be >= 0, got {length}")
    return p_win**length


def expected_greats(population: int, p_event: float) -> float:
    """Expected number of qualifiers among ``population`` under pure chance."""
    if population < 1:
        raise ValueError(f"population: must be >= 1, got {population}")
    if not 0.0 <= p_event <= 1.0:
        raise ValueError(f"p_event: probability {p_event!r} outside [0, 1]")
    return population * p_event


@dataclass(frozen=True)
class GreatnessReport:
    """Observed qualifiers against the chance-only expectation."""

    population: int
    p_event: float
    expected_greats: float
    observed_greats: int | None = None
    tail_probability: float | None = None

    def __post_init__(self) -> None:
        if abs(self.expected_greats - self.population * self.p_event) > 1e-12:
            raise ValueError("expected_greats: must equal population * p_event")
        if self.observed_greats is not None and not (
            0 <= self.observed_greats <= self.population
        ):
            raise ValueError(
                f"observed_greats: {self.observed_greats} outside [0, {self.population}]"
            )

    def as_json_dict(self) -> dict:
        return {
            "population": self.population,
            "p_event": self.p_event,
            "expected_greats": self.expected_greats,
            "observed_greats": self.observed_greats,
            "tail_probability": self.tail_probability,
        }


def excess_tail(population: int, p_event: float, observed: int) -> GreatnessReport:
    """Exact binomial upper tail: P(at least ``observed`` qualifiers).

    Terms C(N, j) p^j (1-p)^(N-j) are computed with exact integer binomials
    and accumulated in floating point; no normal approximation.
    """
    expected = expected_greats(population, p_event)
    if not 0 <= observed <= population:
        raise ValueError(
            f"observed: {observed} outside [0, {population}]"
        )
    q = 1.0 - p_event
    tail = 0.0
    for j in range(observed, population + 1):
        tail += float(math.comb(population, j)) * p_event**j * q ** (population - j)
    return GreatnessReport(
        population=population,
        p_event=p_event,
        expected_greats=expected,
        observed_greats=observed,
        tail_probability=tail,
    )


def simulate_generals(
    population: int, battles: int, p_win: float, seed: int
) -> EstimateWithError:
    """Fraction of a simulated population winning every one of its battles.

    Each individual fights ``battles`` independent even trials won with
    probability ``p_win``; deterministic under a fixed seed.
    """
    if population < 1:
        raise ValueError(f"population: must be >= 1, got {population}")
    if battles < 1:
        raise ValueError(f"battles: must be >= 1, got {battles}")
    if not 0.0 <= p_win <= 1.0:
        raise ValueError(f"p_win: probability {p_win!r} outside [0, 1]")
    rng = np.random.default_rng(seed)
    chunk = max(1, _SIM_CHUNK_CELLS // battles)
    greats = 0
    done = 0
    while done < population:
        batch = min(chunk, population - done)
        wins = rng.random((batch, battles)) < p_win
        greats += int(wins.all(axis=1).sum())
        done += batch
    return EstimateWithError.from_successes(greats, population)
