"""miscount: a probability lab for hand-counting errors and their relatives.

Three small models live here. Counting a pile twice raises the chance of
having erred and, for careful counters, the chance of needing a third pass.
Counting it n times can end in a tie where the true total is undecidable,
and that event has an exactly computable probability. On the side: streak
statistics showing pure chance already produces "great" individuals, and a
redistribution referendum that always passes yet pays exactly zero in
expectation.

Use the core functions directly, the ``miscount`` CLI, or the FastAPI
service in :mod:`miscount.service`.
"""

from .error_model import (
    NORMALIZATION_TOL,
    OffsetDistribution,
    from_json_dict,
    make_point_error_model,
    make_symmetric_geometric_model,
    sample_offset,
    sample_offsets,
    to_json_dict,
    total_error_probability,
)
from .recount import (
    DEFAULT_GRID_POINTS,
    PairBreakdown,
    curve_table,
    p_error_repeat,
    pair_breakdown,
    p_third_count_needed,
)
from .streaks import (
    FERMI_PRESET,
    GreatnessReport,
    excess_tail,
    expected_greats,
    p_streak,
    simulate_generals,
)
from .undecidability import (
    BRUTEFORCE_BUDGET,
    DEFAULT_ENUM_BUDGET,
    Decision,
    EnumerationBudgetError,
    EstimateWithError,
    OutcomeTally,
    TieRule,
    composition_count,
    decide_count,
    is_undecidable,
    p_un_bruteforce,
    p_un_enumerate,
    p_un_montecarlo,
    tally_terms,
    weak_compositions,
)
from .vote_game import (
    ReformSpec,
    RoundStats,
    Society,
    apply_round,
    benefit_probability,
    expected_gain,
    gini_coefficient,
    redistribution_amount,
    referendum_passes,
    run_rounds,
    simulate_rounds,
)

__version__ = "0.1.0"

__all__ = [
    "BRUTEFORCE_BUDGET",
    "DEFAULT_ENUM_BUDGET",
    "DEFAULT_GRID_POINTS",
    "Decision",
    "EnumerationBudgetError",
    "EstimateWithError",
    "FERMI_PRESET",
    "GreatnessReport",
    "NORMALIZATION_TOL",
    "OffsetDistribution",
    "OutcomeTally",
    "PairBreakdown",
    "ReformSpec",
    "RoundStats",
    "Society",
    "TieRule",
    "apply_round",
    "benefit_probability",
    "composition_count",
    "curve_table",
    "decide_count",
    "excess_tail",
    "expected_gain",
    "expected_greats",
    "from_json_dict",
    "gini_coefficient",
    "is_undecidable",
    "make_point_error_model",
    "make_symmetric_geometric_model",
    "p_error_repeat",
    "p_streak",
    "p_third_count_needed",
    "p_un_bruteforce",
    "p_un_enumerate",
    "p_un_montecarlo",
    "pair_breakdown",
    "redistribution_amount",
    "referendum_passes",
    "run_rounds",
    "sample_offset",
    "sample_offsets",
    "simulate_generals",
    "simulate_rounds",
    "tally_terms",
    "to_json_dict",
    "total_error_probability",
    "weak_compositions",
]
