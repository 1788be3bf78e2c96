"""Single-count error models over integer miscount offsets.

Counting a pile of M objects by hand returns some value E, and the offset
E - M measures how far the count landed from the truth. A model here is a
probability mass over the integer offsets one attempt can produce; offset 0
means the count came out right, so its mass is one minus the total error
probability. Everything downstream (pair breakdowns, undecidability sums,
Monte Carlo drivers) consumes these distributions.

The true shape of a human error law is unknown, so the module ships two
explicit families (a single wrong value, and symmetric geometric decay away
from zero) plus direct construction from an arbitrary mass table.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

#: Absolute tolerance on the total probability mass of a distribution.
NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True)
class OffsetDistribution:
    """Probability mass over the integer offsets of a single count.

    ``support`` is strictly increasing and always contains offset 0 (its
    mass may be 0). ``delta_min <= 0 <= delta_max`` bound the representable
    offsets; how wide the bounds should be for a given pile size is the
    caller's call, not something this module models.
    """

    support: tuple[int, ...]
    mass: tuple[float, ...]
    delta_min: int
    delta_max: int

    def __post_init__(self) -> None:
        if len(self.support) != len(self.mass):
            raise ValueError("support and mass must have the same length")
        if not self.support:
            raise ValueError("support must not be empty")
        if not (self.delta_min <= 0 <= self.delta_max):
            raise ValueError(
                f"delta_min: bounds must satisfy delta_min <= 0 <= delta_max, "
                f"got [{self.delta_min}, {self.delta_max}]"
            )
        if any(b <= a for a, b in zip(self.support, self.support[1:])):
            raise ValueError("delta: offsets must be distinct and sorted")
        if 0 not in self.support:
            raise ValueError("delta: offset 0 must be in the support")
        for delta in self.support:
            if not self.delta_min <= delta <= self.delta_max:
                raise ValueError(
                    f"delta: offset {delta} outside [{self.delta_min}, {self.delta_max}]"
                )
        for p in self.mass:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"p: mass {p!r} outside [0, 1]")
        total = float(sum(self.mass))
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise ValueError(
                f"mass: probabilities sum to {total!r}, expected 1 within {NORMALIZATION_TOL}"
            )

    @classmethod
    def from_table(
        cls,
        table: Mapping[int, float],
        delta_min: int | None = None,
        delta_max: int | None = None,
    ) -> "OffsetDistribution":
        """Build a distribution from an offset -> probability mapping.

        Offset 0 is inserted with mass 0 if absent. Bounds default to the
        tightest interval covering the support and zero.
        """
        entries = dict(table)
        entries.setdefault(0, 0.0)
        support = tuple(sorted(entries))
        if delta_min is None:
            delta_min = min(support)
        if delta_max is None:
            delta_max = max(support)
        mass = tuple(float(entries[d]) for d in support)
        return cls(support=support, mass=mass, delta_min=delta_min, delta_max=delta_max)

    def mass_at(self, delta: int) -> float:
        """Mass of a single offset; 0.0 for offsets outside the support."""
        try:
            return self.mass[self.support.index(delta)]
        except ValueError:
            return 0.0

    def as_table(self) -> dict[int, float]:
        return dict(zip(self.support, self.mass))


def make_point_error_model(p: float, wrong_offset: int) -> OffsetDistribution:
    """Simplest error law: every wrong count lands on one fixed offset.

    Produces mass 1 - p at offset 0 and mass p at ``wrong_offset``.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p: error probability {p!r} outside [0, 1]")
    if wrong_offset == 0:
        raise ValueError("wrong_offset: must be nonzero")
    return OffsetDistribution.from_table({0: 1.0 - p, wrong_offset: p})


def make_symmetric_geometric_model(
    p: float, decay: float, delta_min: int, delta_max: int
) -> OffsetDistribution:
    """Error law whose wrong-offset mass decays geometrically with |offset|.

    Offset 0 keeps mass 1 - p; each nonzero offset in [delta_min, delta_max]
    gets a weight decay**|offset|, and the weights are rescaled so the wrong
    offsets carry total mass p.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p: error probability {p!r} outside [0, 1]")
    if not 0.0 < decay < 1.0:
        raise ValueError(f"decay: {decay!r} outside (0, 1)")
    if delta_min > -1 or delta_max < 1:
        raise ValueError(
            f"delta_min/delta_max: need delta_min <= -1 and delta_max >= 1, "
            f"got [{delta_min}, {delta_max}]"
        )
    weights = {d: decay ** abs(d) for d in range(delta_min, delta_max + 1) if d != 0}
    if not weights:
        raise ValueError("delta_min/delta_max: no nonzero offsets in range")
    scale = p / sum(weights.values())
    table = {d: w * scale for d, w in weights.items()}
    table[0] = 1.0 - p
    return OffsetDistribution.from_table(table, delta_min=delta_min, delta_max=delta_max)


def total_error_probability(model: OffsetDistribution) -> float:
    """Probability that a single count comes out wrong: 1 - mass(0)."""
    return 1.0 - model.mass_at(0)


def sample_offsets(
    model: OffsetDistribution, size: int, rng: np.random.Generator
) -> np.ndarray:
    """Draw ``size`` independent offsets from the model.

    Inverse-CDF sampling on the generator's uniform stream, so a given seed
    reproduces the same sequence and zero-mass offsets are never drawn.
    """
    cumulative = np.cumsum(model.mass)
    u = rng.random(size)
    idx = np.searchsorted(cumulative, u, side="right")
    np.minimum(idx, len(cumulative) - 1, out=idx)
    return np.asarray(model.support, dtype=np.int64)[idx]


def sample_offset(model: OffsetDistribution, rng: np.random.Generator) -> int:
    """Draw one offset from the model."""
    return int(sample_offsets(model, 1, rng)[0])


def to_json_dict(model: OffsetDistribution) -> dict:
    """Serialize to the mass-table wire format.

    ``{"delta_min": int, "delta_max": int, "mass": [{"delta": int, "p": float}, ...]}``
    """
    return {
        "delta_min": model.delta_min,
        "delta_max": model.delta_max,
        "mass": [{"delta": d, "p": p} for d, p in zip(model.support, model.mass)],
    }


def from_json_dict(obj: Mapping) -> OffsetDistribution:
    """Load a mass table from the wire format, rejecting malformed input.

    Errors name the offending field; non-normalized tables are rejected
    rather than silently rescaled.
    """
    if not isinstance(obj, Mapping):
        raise ValueError("mass table: expected a JSON object")
    for key in ("delta_min", "delta_max", "mass"):
        if key not in obj:
            raise ValueError(f"{key}: missing required field")
    delta_min, delta_max = obj["delta_min"], obj["delta_max"]
    if not isinstance(delta_min, int) or isinstance(delta_min, bool):
        raise ValueError(f"delta_min: expected an integer, got {delta_min!r}")
    if not isinstance(delta_max, int) or isinstance(delta_max, bool):
        raise ValueError(f"delta_max: expected an integer, got {delta_max!r}")
    entries = obj["mass"]
    if not isinstance(entries, list):
        raise ValueError("mass: expected a list of {delta, p} objects")
    table: dict[int, float] = {}
    for entry in entries:
        if not isinstance(entry, Mapping) or "delta" not in entry or "p" not in entry:
            raise ValueError(f"mass: entry {entry!r} must have 'delta' and 'p'")
        delta, p = entry["delta"], entry["p"]
        if not isinstance(delta, int) or isinstance(delta, bool):
            raise ValueError(f"delta: expected an integer, got {delta!r}")
        if not isinstance(p, (int, float)) or isinstance(p, bool):
            raise ValueError(f"p: expected a number, got {p!r}")
        if delta in table:
            raise ValueError(f"delta: duplicate offset {delta}")
        table[delta] = float(p)
    return OffsetDistribution.from_table(table, delta_min=delta_min, delta_max=delta_max)
