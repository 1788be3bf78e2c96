"""FastAPI service wrapping the core computations.

Stateless compute endpoints; determinism is the client's responsibility via
the seed fields. Domain rejections surface as 400, exact computations over
budget as 409 with a hint to use the Monte Carlo method.

Run with: uvicorn miscount.service.app:app
"""

from __future__ import annotations

from fractions import Fraction

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..recount import curve_table, pair_breakdown, p_third_count_needed
from ..streaks import excess_tail, expected_greats, p_streak, simulate_generals
from ..undecidability import (
    EnumerationBudgetError,
    decide_count,
    p_un_bruteforce,
    p_un_enumerate,
    p_un_montecarlo,
)
from ..vote_game import (
    ReformSpec,
    benefit_probability,
    expected_gain,
    redistribution_amount,
    referendum_passes,
    simulate_rounds,
)
from . import schemas

app = FastAPI(
    title="miscount",
    description="Probability lab for repeated counts, undecidable tallies, "
    "streak statistics, and the redistribution vote game.",
    version=__version__,
)


@app.exception_handler(ValueError)
async def value_error_handler(request: Request, exc: ValueError) -> JSONResponse:
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.exception_handler(EnumerationBudgetError)
async def budget_error_handler(
    request: Request, exc: EnumerationBudgetError
) -> JSONResponse:
    return JSONResponse(status_code=409, content={"detail": str(exc)})


@app.get("/health", response_model=schemas.HealthResponse)
def health() -> schemas.HealthResponse:
    return schemas.HealthResponse(status="ok", version=__version__)


@app.post("/recount/curves", response_model=schemas.CurvesResponse)
def recount_curves(request: schemas.CurvesRequest) -> schemas.CurvesResponse:
    rows = [
        schemas.CurveRow(p=p, p_err1=err1, p_err2=err2, p_mixed=mixed)
        for p, err1, err2, mixed in curve_table(request.grid_points)
    ]
    return schemas.CurvesResponse(rows=rows)


@app.post("/recount/pair", response_model=schemas.PairResponse)
def recount_pair(request: schemas.PairRequest) -> schemas.PairResponse:
    model = schemas.build_model(request.model_spec)
    breakdown = pair_breakdown(model)
    return schemas.PairResponse(
        both_correct=breakdown.both_correct,
        one_correct_one_wrong=breakdown.one_correct_one_wrong,
        both_wrong_same_value=breakdown.both_wrong_same_value,
        both_wrong_different_values=breakdown.both_wrong_different_values,
        p_third_count_needed=p_third_count_needed(model),
    )


@app.post("/undecidable", response_model=schemas.UndecidableResponse)
def undecidable(request: schemas.UndecidableRequest) -> schemas.UndecidableResponse:
    model = schemas.build_model(request.model_spec)
    rule = request.rule.build()
    if request.method == "enumerate":
        value = p_un_enumerate(model, request.n, rule)
        return schemas.UndecidableResponse(
            method=request.method, n=request.n, rule=request.rule, p_un=value
        )
    if request.method == "bruteforce":
        value = p_un_bruteforce(model, request.n, rule)
        return schemas.UndecidableResponse(
            method=request.method, n=request.n, rule=request.rule, p_un=value
        )
    result = p_un_montecarlo(
        model, request.n, rule, trials=request.trials, seed=request.seed
    )
    return schemas.UndecidableResponse(
        method=request.method,
        n=request.n,
        rule=request.rule,
        p_un=result.estimate,
        std_error=result.std_error,
        trials=result.trials,
        seed=request.seed,
    )


@app.post("/undecidable/decide", response_model=schemas.DecideResponse)
def decide(request: schemas.DecideRequest) -> schemas.DecideResponse:
    decision = decide_count(request.offsets, request.rule.build())
    return schemas.DecideResponse(decided=decision.decided, offset=decision.offset)


@app.post("/streaks", response_model=schemas.StreaksResponse)
def streaks(request: schemas.StreaksRequest) -> schemas.StreaksResponse:
    p_event = p_streak(request.p_win, request.battles)
    observed = request.observed
    tail = None
    if observed is not None:
        tail = excess_tail(request.population, p_event, observed).tail_probability
    simulation = None
    if request.simulate:
        result = simulate_generals(
            request.population, request.battles, request.p_win, seed=request.seed
        )
        simulation = schemas.SimulationResult(
            estimate=result.estimate,
            std_error=result.std_error,
            trials=result.trials,
            seed=request.seed,
        )
    return schemas.StreaksResponse(
        population=request.population,
        battles=request.battles,
        p_win=request.p_win,
        p_streak=p_event,
        p_event=p_event,
        expected_greats=expected_greats(request.population, p_event),
        observed_greats=observed,
        tail_probability=tail,
        simulation=simulation,
    )


@app.post("/vote/algebra", response_model=schemas.VoteAlgebraResponse)
def vote_algebra(request: schemas.VoteAlgebraRequest) -> schemas.VoteAlgebraResponse:
    spec = ReformSpec(n_half=request.n_half, k=request.k, levy=Fraction(request.levy))
    benefit = benefit_probability(spec)
    return schemas.VoteAlgebraResponse(
        redistribution_amount=str(redistribution_amount(spec)),
        benefit_probability=str(benefit),
        benefit_edge_over_half=str(benefit - Fraction(1, 2)),
        expected_gain=str(expected_gain(spec)),
        passes_with_winner_block=referendum_passes(spec.winners, spec),
    )


@app.post("/vote/simulate", response_model=schemas.VoteSimResponse)
def vote_simulate(request: schemas.VoteSimRequest) -> schemas.VoteSimResponse:
    spec = ReformSpec(
        n_half=request.n_half,
        k=request.k,
        levy=Fraction(request.levy),
        base_salary=Fraction(request.base_salary),
    )
    trajectory = simulate_rounds(
        spec, rounds=request.rounds, seed=request.seed, floor=request.floor
    )
    rows = [
        schemas.TrajectoryRow(
            round=row.round,
            mean=row.mean,
            variance=row.variance,
            gini=row.gini,
            min=row.min_salary,
            max=row.max_salary,
        )
        for row in trajectory
    ]
    return schemas.VoteSimResponse(seed=request.seed, floor=request.floor, trajectory=rows)
