"""Referendum game where a random majority taxes the minority.

A society of 2N equal earners votes on a reform that takes an amount m from
N-k randomly chosen citizens and splits the proceeds equally among the
other N+k. The winning group is a guaranteed absolute majority, so under
the 50%+1 rule the reform always passes; each voter's chance of landing on
the winning side exceeds one half, yet the expected gain of playing is
exactly zero. The game is fair in expectation and perverse in outcome.

All money is exact rational arithmetic: the per-winner share is generically
a non-integer fraction, and total wealth must be conserved bit-exactly, not
merely to rounding. Salaries are stored as integer numerators over a common
denominator so long simulations stay exact without per-operation rational
normalization.

Repeating the referendum round after round, with fresh random groups each
time, is an extension of the single-vote setup; it has no bankruptcy rule,
so salaries may go negative unless the (conservation-breaking) floor option
is switched on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

import numpy as np

RationalLike = Union[Fraction, int, str]


def _as_fraction(value: RationalLike, field: str) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ValueError(f"{field}: not an exact rational: {value!r}") from exc


def _exact_int(value: Fraction) -> int:
    # Guard against silent truncation; callers arrange integrality first.
    if value.denominator != 1:
        raise ValueError(f"expected an integer amount, got {value}")
    return value.numerator


@dataclass(frozen=True)
class ReformSpec:
    """Parameters of the reform: society size 2N, winner surplus k, levy m.

    ``base_salary`` is the common starting salary s of every citizen.
    """

    n_half: int
    k: int
    levy: Fraction
    base_salary: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "levy", _as_fraction(self.levy, "levy"))
        object.__setattr__(
            self, "base_salary", _as_fraction(self.base_salary, "base_salary")
        )
        if self.n_half < 2:
            raise ValueError(f"n_half: need N >= 2, got {self.n_half}")
        if not 1 <= self.k <= self.n_half - 1:
            raise ValueError(
                f"k: need 1 <= k <= N-1 = {self.n_half - 1}, got {self.k}"
            )
        if self.levy <= 0:
            raise ValueError(f"levy: must be positive, got {self.levy}")
        if self.base_salary < 0:
            raise ValueError(
                f"base_salary: must be nonnegative, got {self.base_salary}"
            )

    @property
    def society_size(self) -> int:
        return 2 * self.n_half

    @property
    def winners(self) -> int:
        return self.n_half + self.k

    @property
    def losers(self) -> int:
        return self.n_half - self.k


def redistribution_amount(spec: ReformSpec) -> Fraction:
    """Per-winner share of the levied money: (N-k) m / (N+k), exact."""
    return Fraction(spec.losers, spec.winners) * spec.levy


def benefit_probability(spec: ReformSpec) -> Fraction:
    """Chance a random citizen lands on the winning side: (N+k) / 2N.

    Exceeds one half by exactly k / 2N for every valid spec, which is why
    the rational vote is always yes.
    """
    return Fraction(spec.winners, spec.society_size)


def expected_gain(spec: ReformSpec) -> Fraction:
    """Expected one-round gain of a citizen; the algebra collapses to 0.

    Computed as the literal expectation, win share times win probability
    minus levy times loss probability, so the fairness identity is checked
    by arithmetic rather than asserted.
    """
    p_win = benefit_probability(spec)
    p_lose = Fraction(spec.losers, spec.society_size)
    return p_win * redistribution_amount(spec) + p_lose * (-spec.levy)


def referendum_passes(yes_votes: int, spec: ReformSpec) -> bool:
    """50%+1 rule: passes iff yes votes reach N+1 of the 2N ballots."""
    if not 0 <= yes_votes <= spec.society_size:
        raise ValueError(
            f"yes_votes: {yes_votes} outside [0, {spec.society_size}]"
        )
    return yes_votes >= spec.n_half + 1


@dataclass(frozen=True)
class Society:
    """2N citizen salaries as exact integer numerators over one denominator."""

    numerators: tuple[int, ...]
    denominator: int
    round: int = 0

    def __post_init__(self) -> None:
        if self.denominator < 1:
            raise ValueError(f"denominator: must be >= 1, got {self.denominator}")
        if self.round < 0:
            raise ValueError(f"round: must be >= 0, got {self.round}")
        if not self.numerators:
            raise ValueError("numerators: society must not be empty")

    @classmethod
    def uniform(cls, spec: ReformSpec) -> "Society":
        """Fresh society: every citizen at the spec's base salary, round 0."""
        denominator = spec.winners * math.lcm(
            spec.levy.denominator, spec.base_salary.denominator
        )
        numerator = _exact_int(spec.base_salary * denominator)
        return cls(
            numerators=(numerator,) * spec.society_size,
            denominator=denominator,
            round=0,
        )

    @classmethod
    def from_salaries(cls, salaries: Iterable[RationalLike], round: int = 0) -> "Society":
        values = [_as_fraction(s, "salaries") for s in salaries]
        if not values:
            raise ValueError("salaries: society must not be empty")
        denominator = math.lcm(*(v.denominator for v in values))
        return cls(
            numerators=tuple(_exact_int(v * denominator) for v in values),
            denominator=denominator,
            round=round,
        )

    @property
    def salaries(self) -> tuple[Fraction, ...]:
        d = self.denominator
        return tuple(Fraction(n, d) for n in self.numerators)

    @property
    def total_wealth(self) -> Fraction:
        return Fraction(sum(self.numerators), self.denominator)


def _rescaled(society: Society, spec: ReformSpec) -> Society:
    # Smallest denominator on which the levy and the per-winner share are
    # both integers; rescaling is exact.
    needed = math.lcm(society.denominator, spec.winners * spec.levy.denominator)
    if needed == society.denominator:
        return society
    factor = needed // society.denominator
    return Society(
        numerators=tuple(n * factor for n in society.numerators),
        denominator=needed,
        round=society.round,
    )


def apply_round(
    society: Society,
    spec: ReformSpec,
    rng: np.random.Generator,
    floor: bool = False,
) -> Society:
    """Apply one passed referendum with uniformly random loser selection.

    Losers are the first N-k indices of a seeded shuffle of all citizens;
    they pay the levy and everyone else receives the per-winner share.
    Total wealth is conserved exactly. With ``floor`` set, salaries are
    clamped at zero after the transfer, which destroys money and therefore
    breaks conservation; it is off by default.
    """
    if len(society.numerators) != spec.society_size:
        raise ValueError(
            f"society has {len(society.numerators)} citizens, spec wants "
            f"{spec.society_size}"
        )
    society = _rescaled(society, spec)
    d = society.denominator
    levy_num = _exact_int(spec.levy * d)
    share_num = _exact_int(redistribution_amount(spec) * d)
    order = rng.permutation(spec.society_size)
    loser_set = {int(i) for i in order[: spec.losers]}
    updated = [
        n - levy_num if i in loser_set else n + share_num
        for i, n in enumerate(society.numerators)
    ]
    if floor:
        updated = [max(n, 0) for n in updated]
    return Society(
        numerators=tuple(updated), denominator=d, round=society.round + 1
    )


def run_rounds(
    spec: ReformSpec, rounds: int, seed: int, floor: bool = False
) -> Society:
    """Run ``rounds`` referendums from a uniform start; returns the end state."""
    if rounds < 1:
        raise ValueError(f"rounds: must be >= 1, got {rounds}")
    rng = np.random.default_rng(seed)
    society = Society.uniform(spec)
    for _ in range(rounds):
        society = apply_round(society, spec, rng, floor=floor)
    return society


@dataclass(frozen=True)
class RoundStats:
    """Per-round salary statistics, floats converted from exact values."""

    round: int
    mean: float
    variance: float
    gini: float
    min_salary: float
    max_salary: float

    def as_json_dict(self) -> dict:
        return {
            "round": self.round,
            "mean": self.mean,
            "variance": self.variance,
            "gini": self.gini,
            "min": self.min_salary,
            "max": self.max_salary,
        }


def gini_coefficient(society: Society) -> Fraction:
    """Gini of the salary vector, exact; 0 for a zero-wealth society.

    Standard sorted-rank formula; negative salaries are fed in as they are,
    so values above 1 are possible late in an unfloored simulation.
    """
    nums = sorted(society.numerators)
    n = len(nums)
    total = sum(nums)
    if total == 0:
        return Fraction(0)
    weighted = sum(rank * value for rank, value in enumerate(nums, start=1))
    return Fraction(2 * weighted, n * total) - Fraction(n + 1, n)


def _round_stats(society: Society) -> RoundStats:
    nums = society.numerators
    n = len(nums)
    d = society.denominator
    total = sum(nums)
    sum_sq = sum(v * v for v in nums)
    mean = Fraction(total, n * d)
    variance = Fraction(n * sum_sq - total * total, n * n * d * d)
    return RoundStats(
        round=society.round,
        mean=float(mean),
        variance=float(variance),
        gini=float(gini_coefficient(society)),
        min_salary=float(Fraction(min(nums), d)),
        max_salary=float(Fraction(max(nums), d)),
    )


def simulate_rounds(
    spec: ReformSpec, rounds: int, seed: int, floor: bool = False
) -> list[RoundStats]:
    """Trajectory of salary statistics from the uniform start.

    Row 0 describes the untouched society (variance and gini 0); one more
    row follows per referendum round. The mean never moves unless the floor
    option is destroying money.
    """
    if rounds < 1:
        raise ValueError(f"rounds: must be >= 1, got {rounds}")
    rng = np.random.default_rng(seed)
    society = Society.uniform(spec)
    trajectory = [_round_stats(society)]
    for _ in range(rounds):
        society = apply_round(society, spec, rng, floor=floor)
        trajectory.append(_round_stats(society))
    return trajectory
