"""Request and response models for the HTTP service.

Mirrors the CLI surface: one request model per computation, discriminated
union for the three ways of specifying an error model, exact rationals
carried as strings so nothing is lost on the wire.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, Field, field_validator

from ..error_model import (
    OffsetDistribution,
    from_json_dict,
    make_point_error_model,
    make_symmetric_geometric_model,
)
from ..undecidability import TieRule


class PointModelSpec(BaseModel):
    kind: Literal["point"]
    p: float
    wrong_offset: int


class GeometricModelSpec(BaseModel):
    kind: Literal["geometric"]
    p: float
    decay: float
    delta_min: int
    delta_max: int


class MassEntry(BaseModel):
    delta: int
    p: float


class TableModelSpec(BaseModel):
    """Inline mass table; same fields as the JSON file format."""

    kind: Literal["table"]
    delta_min: int
    delta_max: int
    mass: list[MassEntry]


ModelSpec = Annotated[
    Union[PointModelSpec, GeometricModelSpec, TableModelSpec],
    Field(discriminator="kind"),
]


def build_model(spec: ModelSpec) -> OffsetDistribution:
    if isinstance(spec, PointModelSpec):
        return make_point_error_model(spec.p, spec.wrong_offset)
    if isinstance(spec, GeometricModelSpec):
        return make_symmetric_geometric_model(
            spec.p, spec.decay, spec.delta_min, spec.delta_max
        )
    return from_json_dict(spec.model_dump())


class TieRuleSpec(BaseModel):
    kind: Literal["mode_tie", "tolerance_band"] = "mode_tie"
    tolerance: int = 0

    def build(self) -> TieRule:
        return TieRule(kind=self.kind, tolerance=self.tolerance)


class CurvesRequest(BaseModel):
    grid_points: int = 101


class CurveRow(BaseModel):
    p: float
    p_err1: float
    p_err2: float
    p_mixed: float


class CurvesResponse(BaseModel):
    rows: list[CurveRow]


class PairRequest(BaseModel):
    model_spec: ModelSpec = Field(alias="model")


class PairResponse(BaseModel):
    both_correct: float
    one_correct_one_wrong: float
    both_wrong_same_value: float
    both_wrong_different_values: float
    p_third_count_needed: float


class UndecidableRequest(BaseModel):
    model_spec: ModelSpec = Field(alias="model")
    n: int
    rule: TieRuleSpec = TieRuleSpec()
    method: Literal["enumerate", "bruteforce", "montecarlo"] = "enumerate"
    trials: int = 100_000
    seed: int = 0


class UndecidableResponse(BaseModel):
    method: str
    n: int
    rule: TieRuleSpec
    p_un: float
    std_error: Optional[float] = None
    trials: Optional[int] = None
    seed: Optional[int] = None


class DecideRequest(BaseModel):
    offsets: list[int] = Field(min_length=1)
    rule: TieRuleSpec = TieRuleSpec()


class DecideResponse(BaseModel):
    decided: bool
    offset: Optional[int] = None


class StreaksRequest(BaseModel):
    population: int = 100
    battles: int = 5
    p_win: float = 0.5
    observed: Optional[int] = None
    simulate: bool = False
    seed: int = 0


class SimulationResult(BaseModel):
    estimate: float
    std_error: float
    trials: int
    seed: int


class StreaksResponse(BaseModel):
    population: int
    battles: int
    p_win: float
    p_streak: float
    p_event: float
    expected_greats: float
    observed_greats: Optional[int] = None
    tail_probability: Optional[float] = None
    simulation: Optional[SimulationResult] = None


class VoteAlgebraRequest(BaseModel):
    n_half: int
    k: int
    levy: str = "1"

    @field_validator("levy")
    @classmethod
    def _levy_is_rational(cls, value: str) -> str:
        Fraction(value)
        return value


class VoteAlgebraResponse(BaseModel):
    """Exact referendum algebra; rationals as strings, nothing rounded."""

    redistribution_amount: str
    benefit_probability: str
    benefit_edge_over_half: str
    expected_gain: str
    passes_with_winner_block: bool


class VoteSimRequest(BaseModel):
    n_half: int
    k: int
    levy: str = "1"
    base_salary: str = "100"
    rounds: int = 100
    seed: int = 0
    floor: bool = False

    @field_validator("levy", "base_salary")
    @classmethod
    def _is_rational(cls, value: str) -> str:
        Fraction(value)
        return value


class TrajectoryRow(BaseModel):
    round: int
    mean: float
    variance: float
    gini: float
    min: float
    max: float


class VoteSimResponse(BaseModel):
    seed: int
    floor: bool
    trajectory: list[TrajectoryRow]


class HealthResponse(BaseModel):
    status: str
    version: str
