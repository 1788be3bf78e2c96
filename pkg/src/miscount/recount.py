"""Closed forms for counting the same pile once, twice, or n times.

Counting twice raises the chance of having erred at least once, and when
the single-count error probability p is below one half, two counts disagree
(forcing a third count) more often than a single count is simply wrong.
These are small identities, but the pair breakdown below makes them exact
for any offset distribution, not just the scalar-p caricature.
"""

from __future__ import annotations

from dataclasses import dataclass

from .error_model import OffsetDistribution

#: Default resolution of the curve table (0.01 steps over [0, 1]).
DEFAULT_GRID_POINTS = 101


def p_error_repeat(p: float, n: int) -> float:
    """Probability of erring at least once in n independent counts.

    1 - (1 - p)**n; n = 1 reduces to the single-count error probability p.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p: error probability {p!r} outside [0, 1]")
    if n < 1:
        raise ValueError(f"n: need at least one count, got {n}")
    return 1.0 - (1.0 - p) ** n


@dataclass(frozen=True)
class PairBreakdown:
    """Four-way partition of two independent counts of the same pile.

    The fields sum to 1: the first two depend only on the scalar error
    probability, the both-wrong split depends on how the wrong mass is
    spread over offsets.
    """

    both_correct: float
    one_correct_one_wrong: float
    both_wrong_same_value: float
    both_wrong_different_values: float

    def as_json_dict(self) -> dict:
        return {
            "both_correct": self.both_correct,
            "one_correct_one_wrong": self.one_correct_one_wrong,
            "both_wrong_same_value": self.both_wrong_same_value,
            "both_wrong_different_values": self.both_wrong_different_values,
        }


def pair_breakdown(model: OffsetDistribution) -> PairBreakdown:
    """Split two i.i.d. counts into correct/wrong agreement classes."""
    correct = model.mass_at(0)
    wrong = 1.0 - correct
    both_wrong_same = sum(p * p for d, p in zip(model.support, model.mass) if d != 0)
    return PairBreakdown(
        both_correct=correct * correct,
        one_correct_one_wrong=2.0 * correct * wrong,
        both_wrong_same_value=both_wrong_same,
        both_wrong_different_values=wrong * wrong - both_wrong_same,
    )


def p_third_count_needed(model: OffsetDistribution) -> float:
    """Probability two counts disagree, forcing (at least) a third count.

    1 - sum of mass(d)**2 over the whole support; disagreeing counts may
    both be wrong, so this exceeds the correct-plus-wrong mix 2p(1-p).
    """
    return 1.0 - sum(p * p for p in model.mass)


def curve_table(
    grid_points: int = DEFAULT_GRID_POINTS,
) -> list[tuple[float, float, float, float]]:
    """Rows (p, p_err1, p_err2, p_mixed) on a uniform grid over [0, 1].

    p_err1 = p, p_err2 = 1 - (1-p)**2, p_mixed = 2p(1-p).
    """
    if grid_points < 2:
        raise ValueError(f"grid_points: need at least 2, got {grid_points}")
    rows = []
    for i in range(grid_points):
        p = i / (grid_points - 1)
        rows.append((p, p, p_error_repeat(p, 2), 2.0 * p * (1.0 - p)))
    return rows
