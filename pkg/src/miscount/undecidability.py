"""Probability that repeated counts leave the counter unable to decide.

Someone counts the same pile n times. Each attempt lands on an offset drawn
from the error model, and the n results group into distinct values with
multiplicities. If no value wins a clear plurality, no amount of staring at
the tally reveals the true total: the observed values, correct and wrong
alike, appear in roughly equal numbers. This module computes the probability
of that stuck state three independent ways:

* ``p_un_enumerate``  - exact sum over multiplicity patterns (weak
  compositions of n onto the support), weighting each undecidable tally by
  its multinomial coefficient times the product of offset masses.
* ``p_un_bruteforce`` - exact sum over all |support|**n ordered outcome
  sequences; an independent oracle for the enumeration.
* ``p_un_montecarlo`` - seeded simulation with a binomial standard error,
  for sizes where exact evaluation is off the table.

"Roughly equal numbers" is not a single formal condition, so two readings
are provided as tie rules (see :class:`TieRule`); the parameter-free
``mode_tie`` is the default.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .error_model import OffsetDistribution, sample_offsets

#: Maximum number of weak compositions p_un_enumerate will walk by default.
DEFAULT_ENUM_BUDGET = 10**8
#: Maximum number of ordered sequences p_un_bruteforce will walk.
BRUTEFORCE_BUDGET = 10**7

MODE_TIE = "mode_tie"
TOLERANCE_BAND = "tolerance_band"

# Per-chunk cap on trials*n*|support| bools in the Monte Carlo tally step.
_MC_CHUNK_CELLS = 2**25


class EnumerationBudgetError(RuntimeError):
    """Exact computation would exceed its budget; use Monte Carlo instead."""


@dataclass(frozen=True)
class TieRule:
    """Formalization of "the observed values appear in about equal numbers".

    * ``mode_tie``: undecidable iff the maximum multiplicity is attained by
      at least two distinct offsets, i.e. no strict plurality winner.
      Parameter-free; ``tolerance`` is ignored.
    * ``tolerance_band``: undecidable iff at least two distinct values
      appeared and all appearing multiplicities differ by at most
      ``tolerance``. The literal near-equal-counts reading.
    """

    kind: str = MODE_TIE
    tolerance: int = 0

    def __post_init__(self) -> None:
        if self.kind not in (MODE_TIE, TOLERANCE_BAND):
            raise ValueError(f"kind: unknown tie rule {self.kind!r}")
        if self.kind == TOLERANCE_BAND and self.tolerance < 0:
            raise ValueError(f"tolerance: must be >= 0, got {self.tolerance}")

    @classmethod
    def mode_tie(cls) -> "TieRule":
        return cls(kind=MODE_TIE)

    @classmethod
    def tolerance_band(cls, tolerance: int) -> "TieRule":
        return cls(kind=TOLERANCE_BAND, tolerance=tolerance)

    def as_json_dict(self) -> dict:
        if self.kind == TOLERANCE_BAND:
            return {"kind": self.kind, "tolerance": self.tolerance}
        return {"kind": self.kind}


@dataclass(frozen=True)
class OutcomeTally:
    """Multiset of n count results grouped by distinct offset.

    ``entries`` is a sorted tuple of (offset, multiplicity) pairs with every
    multiplicity >= 1; ``total`` is the number of counts n.
    """

    entries: tuple[tuple[int, int], ...]
    total: int

    def __post_init__(self) -> None:
        if not self.entries:
            raise ValueError("entries: tally must not be empty")
        offsets = [d for d, _ in self.entries]
        if any(b <= a for a, b in zip(offsets, offsets[1:])):
            raise ValueError("entries: offsets must be distinct and sorted")
        if any(k < 1 for _, k in self.entries):
            raise ValueError("entries: multiplicities must be >= 1")
        if sum(k for _, k in self.entries) != self.total:
            raise ValueError("total: multiplicities must sum to total")

    @classmethod
    def from_offsets(cls, offsets: Iterable[int]) -> "OutcomeTally":
        counts: dict[int, int] = {}
        for d in offsets:
            counts[d] = counts.get(d, 0) + 1
        if not counts:
            raise ValueError("offsets: need at least one observed count")
        entries = tuple(sorted(counts.items()))
        return cls(entries=entries, total=sum(counts.values()))

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(k for _, k in self.entries)

    @property
    def num_groups(self) -> int:
        return len(self.entries)


def _is_tie(multiplicities: Sequence[int], rule: TieRule) -> bool:
    # Shared definition of undecidability over the appearing multiplicities.
    if rule.kind == MODE_TIE:
        top = max(multiplicities)
        return sum(1 for k in multiplicities if k == top) >= 2
    if len(multiplicities) < 2:
        return False
    return max(multiplicities) - min(multiplicities) <= rule.tolerance


def is_undecidable(tally: OutcomeTally, rule: TieRule) -> bool:
    """True iff the tally gives no clear winner under the rule."""
    return _is_tie(tally.multiplicities, rule)


@dataclass(frozen=True)
class Decision:
    """Outcome of reading a tally: a decided offset, or no decision."""

    offset: int | None

    @property
    def decided(self) -> bool:
        return self.offset is not None

    @classmethod
    def undecided(cls) -> "Decision":
        return cls(offset=None)


def decide_count(offsets: Sequence[int], rule: TieRule) -> Decision:
    """Decide which offset to believe from observed counts, if any.

    Undecided when the rule flags a tie, or when the rule passes but the
    modal offset is itself shared. A decided offset can still be wrong:
    the most frequent value may be an error.
    """
    tally = OutcomeTally.from_offsets(offsets)
    if is_undecidable(tally, rule):
        return Decision.undecided()
    top = max(tally.multiplicities)
    modal = [d for d, k in tally.entries if k == top]
    if len(modal) != 1:
        return Decision.undecided()
    return Decision(offset=modal[0])


def weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Yield all tuples of ``parts`` nonnegative ints summing to ``total``.

    Lexicographic order, each composition exactly once, C(total+parts-1,
    parts-1) tuples overall.
    """
    if parts < 1:
        raise ValueError(f"parts: need at least 1, got {parts}")
    if total < 0:
        raise ValueError(f"total: must be >= 0, got {total}")
    if parts == 1:
        yield (total,)
        return
    comp = [0] * (parts - 1) + [total]
    while True:
        yield tuple(comp)
        if comp[-1] > 0:
            # Move one unit from the last slot to its left neighbor.
            comp[-2] += 1
            comp[-1] -= 1
            continue
        # Last slot empty: carry from the rightmost nonzero slot.
        i = parts - 2
        while i >= 0 and comp[i] == 0:
            i -= 1
        if i <= 0:
            return
        value = comp[i]
        comp[i] = 0
        comp[i - 1] += 1
        comp[-1] = value - 1


def _multinomial(counts: Sequence[int], total: int) -> int:
    # total! / prod(k!) as an exact integer via cumulative binomials.
    coefficient = 1
    remaining = total
    for k in counts:
        if k:
            coefficient *= math.comb(remaining, k)
            remaining -= k
    return coefficient


def composition_count(n: int, support_size: int) -> int:
    """Number of weak compositions of n into support_size parts."""
    return math.comb(n + support_size - 1, support_size - 1)


def tally_terms(
    model: OffsetDistribution, n: int
) -> Iterator[tuple[OutcomeTally, float]]:
    """Yield every possible tally of n counts with its exact probability.

    Probabilities over all yielded tallies sum to 1 (up to float rounding);
    compositions assigning counts only to zero-mass offsets still appear,
    with probability 0.
    """
    if n < 1:
        raise ValueError(f"n: need at least one count, got {n}")
    table = model.as_table()
    for comp in weak_compositions(n, len(model.support)):
        entries = tuple((d, k) for d, k in zip(model.support, comp) if k > 0)
        weight = 1.0
        for d, k in entries:
            weight *= table[d] ** k
        probability = float(_multinomial([k for _, k in entries], n)) * weight
        yield OutcomeTally(entries=entries, total=n), probability


def p_un_enumerate(
    model: OffsetDistribution,
    n: int,
    rule: TieRule,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> float:
    """Exact undecidability probability by composition enumeration.

    Walks every weak composition of n onto the support, adds the multinomial
    probability of each tally the rule flags as undecidable. Raises
    :class:`EnumerationBudgetError` when the composition count exceeds
    ``budget``; Monte Carlo is the fallback at that scale.
    """
    if n < 1:
        raise ValueError(f"n: need at least one count, got {n}")
    count = composition_count(n, len(model.support))
    if count > budget:
        raise EnumerationBudgetError(
            f"enumeration needs {count} compositions, budget is {budget}; "
            f"use the Monte Carlo estimator instead"
        )
    masses = model.mass
    total = 0.0
    for comp in weak_compositions(n, len(masses)):
        ks = [k for k in comp if k > 0]
        if not _is_tie(ks, rule):
            continue
        weight = 1.0
        for k, m in zip(comp, masses):
            if k:
                weight *= m**k
        if weight:
            total += float(_multinomial(ks, n)) * weight
    return total


def p_un_bruteforce(model: OffsetDistribution, n: int, rule: TieRule) -> float:
    """Oracle: sum sequence probabilities over all |support|**n outcomes.

    Independent of the composition enumeration; kept brute on purpose.
    """
    if n < 1:
        raise ValueError(f"n: need at least one count, got {n}")
    sequence_count = len(model.support) ** n
    if sequence_count > BRUTEFORCE_BUDGET:
        raise EnumerationBudgetError(
            f"brute force needs {sequence_count} sequences, budget is "
            f"{BRUTEFORCE_BUDGET}"
        )
    mass = model.as_table()
    total = 0.0
    for seq in itertools.product(model.support, repeat=n):
        counts: dict[int, int] = {}
        for d in seq:
            counts[d] = counts.get(d, 0) + 1
        if not _is_tie(list(counts.values()), rule):
            continue
        probability = 1.0
        for d in seq:
            probability *= mass[d]
        total += probability
    return total


@dataclass(frozen=True)
class EstimateWithError:
    """Monte Carlo estimate with its binomial standard error."""

    estimate: float
    std_error: float
    trials: int

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError(f"trials: must be >= 1, got {self.trials}")
        expected = math.sqrt(self.estimate * (1.0 - self.estimate) / self.trials)
        if abs(self.std_error - expected) > 1e-12:
            raise ValueError(
                f"std_error: {self.std_error!r} inconsistent with estimate "
                f"{self.estimate!r} over {self.trials} trials"
            )

    @classmethod
    def from_successes(cls, successes: int, trials: int) -> "EstimateWithError":
        estimate = successes / trials
        return cls(
            estimate=estimate,
            std_error=math.sqrt(estimate * (1.0 - estimate) / trials),
            trials=trials,
        )


def p_un_montecarlo(
    model: OffsetDistribution,
    n: int,
    rule: TieRule,
    trials: int,
    seed: int,
) -> EstimateWithError:
    """Estimate the undecidability probability by seeded simulation.

    Runs ``trials`` experiments of n sampled offsets each and reports the
    undecidable fraction. Deterministic for a fixed seed; trial batches are
    sized by a fixed policy so chunking never changes the draw stream.
    """
    if n < 1:
        raise ValueError(f"n: need at least one count, got {n}")
    if trials < 1:
        raise ValueError(f"trials: must be >= 1, got {trials}")
    rng = np.random.default_rng(seed)
    support_size = len(model.support)
    chunk = max(1, _MC_CHUNK_CELLS // (n * support_size))
    band = rule.kind == TOLERANCE_BAND
    hits = 0
    done = 0
    while done < trials:
        batch = min(chunk, trials - done)
        draws = sample_offsets(model, batch * n, rng).reshape(batch, n)
        # counts[t, j] = how often support[j] appears in trial t.
        counts = (
            draws[:, :, None] == np.asarray(model.support, dtype=np.int64)[None, None, :]
        ).sum(axis=1)
        top = counts.max(axis=1)
        if band:
            appearing = counts > 0
            groups = appearing.sum(axis=1)
            bottom = np.where(appearing, counts, n + 1).min(axis=1)
            undecidable = (groups >= 2) & (top - bottom <= rule.tolerance)
        else:
            undecidable = (counts == top[:, None]).sum(axis=1) >= 2
        hits += int(undecidable.sum())
        done += batch
    return EstimateWithError.from_successes(hits, trials)
