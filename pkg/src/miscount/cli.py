"""Command-line front end: every computation as a deterministic subcommand.

Thin client over the core modules; parsing and formatting only. Tables go
out as CSV, scalar results as JSON, and every stochastic subcommand records
its seed in the emitted document so a rerun with the same argv is
byte-identical.

Exit codes: 0 success, 2 argument or input errors, 3 exact computation over
its budget (the hint is to switch to the Monte Carlo method). The
enumeration budget can be overridden with the MISCOUNT_ENUM_BUDGET
environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .error_model import (
    OffsetDistribution,
    from_json_dict,
    make_point_error_model,
    make_symmetric_geometric_model,
    to_json_dict,
)
from .recount import DEFAULT_GRID_POINTS, curve_table, pair_breakdown, p_third_count_needed
from .streaks import (
    FERMI_PRESET,
    GreatnessReport,
    excess_tail,
    expected_greats,
    p_streak,
    simulate_generals,
)
from .undecidability import (
    DEFAULT_ENUM_BUDGET,
    EnumerationBudgetError,
    TieRule,
    p_un_bruteforce,
    p_un_enumerate,
    p_un_montecarlo,
)
from .vote_game import ReformSpec, simulate_rounds

ENUM_BUDGET_ENV = "MISCOUNT_ENUM_BUDGET"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _fmt(x: float) -> str:
    """12 significant digits, the table output convention."""
    return format(x, ".12g")


def parse_model_spec(text: str) -> OffsetDistribution:
    """Resolve the model mini-language.

    ``point:<p>:<offset>``, ``geom:<p>:<decay>:<dmin>:<dmax>``, or
    ``file:<path>`` pointing at a JSON mass table.
    """
    kind, _, rest = text.partition(":")
    try:
        if kind == "point":
            p, offset = rest.split(":")
            return make_point_error_model(float(p), int(offset))
        if kind == "geom":
            p, decay, dmin, dmax = rest.split(":")
            return make_symmetric_geometric_model(
                float(p), float(decay), int(dmin), int(dmax)
            )
        if kind == "file":
            if not rest:
                raise ValueError("model: file path missing after 'file:'")
            with open(rest, encoding="utf-8") as handle:
                return from_json_dict(json.load(handle))
    except ValueError:
        raise
    except (OSError, json.JSONDecodeError) as exc:
        raise ValueError(f"model: cannot load mass table: {exc}") from exc
    raise ValueError(
        f"model: unknown spec {text!r}; expected point:<p>:<offset>, "
        f"geom:<p>:<decay>:<dmin>:<dmax>, or file:<path>"
    )


def _parse_rule(args: argparse.Namespace) -> TieRule:
    if args.rule == "mode-tie":
        return TieRule.mode_tie()
    return TieRule.tolerance_band(args.tolerance)


def _enum_budget() -> int:
    raw = os.environ.get(ENUM_BUDGET_ENV)
    if raw is None:
        return DEFAULT_ENUM_BUDGET
    try:
        budget = int(raw)
    except ValueError as exc:
        raise ValueError(f"{ENUM_BUDGET_ENV}: not an integer: {raw!r}") from exc
    if budget < 1:
        raise ValueError(f"{ENUM_BUDGET_ENV}: must be >= 1, got {budget}")
    return budget


def _dump_model(model: OffsetDistribution, path: str | None) -> None:
    if path is None:
        return
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(to_json_dict(model), handle, indent=2)
        handle.write("\n")


def _emit_json(document: dict, out) -> None:
    json.dump(document, out, indent=2)
    out.write("\n")


def _cmd_recount_curves(args: argparse.Namespace, out) -> int:
    print("p,p_err1,p_err2,p_mixed", file=out)
    for p, err1, err2, mixed in curve_table(args.grid):
        print(f"{_fmt(p)},{_fmt(err1)},{_fmt(err2)},{_fmt(mixed)}", file=out)
    return EXIT_OK


def _cmd_pair(args: argparse.Namespace, out) -> int:
    model = parse_model_spec(args.model)
    _dump_model(model, args.dump_model)
    breakdown = pair_breakdown(model)
    document = breakdown.as_json_dict()
    document["p_third_count_needed"] = p_third_count_needed(model)
    _emit_json(document, out)
    return EXIT_OK


def _cmd_undecidable(args: argparse.Namespace, out) -> int:
    model = parse_model_spec(args.model)
    _dump_model(model, args.dump_model)
    rule = _parse_rule(args)
    document = {
        "method": args.method,
        "n": args.n,
        "rule": rule.as_json_dict(),
        "p_un": None,
        "std_error": None,
        "trials": None,
        "seed": None,
    }
    if args.method == "enumerate":
        document["p_un"] = p_un_enumerate(model, args.n, rule, budget=_enum_budget())
    elif args.method == "bruteforce":
        document["p_un"] = p_un_bruteforce(model, args.n, rule)
    else:
        result = p_un_montecarlo(model, args.n, rule, trials=args.trials, seed=args.seed)
        document.update(
            p_un=result.estimate,
            std_error=result.std_error,
            trials=result.trials,
            seed=args.seed,
        )
    _emit_json(document, out)
    return EXIT_OK


def _cmd_streaks(args: argparse.Namespace, out) -> int:
    # --fermi is the named alias of the defaults; explicit flags win either way.
    population = FERMI_PRESET["population"] if args.population is None else args.population
    battles = FERMI_PRESET["battles"] if args.battles is None else args.battles
    p_win = FERMI_PRESET["p_win"] if args.p_win is None else args.p_win

    p_event = p_streak(p_win, battles)
    if args.observed is not None:
        report = excess_tail(population, p_event, args.observed)
    else:
        report = GreatnessReport(
            population=population,
            p_event=p_event,
            expected_greats=expected_greats(population, p_event),
        )
    document = {"battles": battles, "p_win": p_win, "p_streak": p_event}
    document.update(report.as_json_dict())
    if args.simulate:
        result = simulate_generals(population, battles, p_win, seed=args.seed)
        document["simulation"] = {
            "estimate": result.estimate,
            "std_error": result.std_error,
            "trials": result.trials,
            "seed": args.seed,
        }
    _emit_json(document, out)
    return EXIT_OK


def _cmd_vote_sim(args: argparse.Namespace, out) -> int:
    spec = ReformSpec(
        n_half=args.n_half,
        k=args.k,
        levy=Fraction(args.levy),
        base_salary=Fraction(args.salary),
    )
    trajectory = simulate_rounds(spec, rounds=args.rounds, seed=args.seed, floor=args.floor)
    if args.json:
        document = {
            "seed": args.seed,
            "floor": args.floor,
            "trajectory": [row.as_json_dict() for row in trajectory],
        }
        _emit_json(document, out)
        return EXIT_OK
    print(f"# seed={args.seed}", file=out)
    print("round,mean,variance,gini,min,max", file=out)
    for row in trajectory:
        print(
            f"{row.round},{_fmt(row.mean)},{_fmt(row.variance)},{_fmt(row.gini)},"
            f"{_fmt(row.min_salary)},{_fmt(row.max_salary)}",
            file=out,
        )
    return EXIT_OK


def _add_model_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--model",
        required=True,
        help="point:<p>:<offset> | geom:<p>:<decay>:<dmin>:<dmax> | file:<path>",
    )
    parser.add_argument(
        "--dump-model",
        metavar="PATH",
        help="also write the resolved model as a JSON mass table",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="miscount",
        description="Probability lab for repeated counts, ties, streaks, and the vote game.",
    )
    parser.add_argument("--version", action="version", version=f"miscount {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    curves = sub.add_parser(
        "recount-curves",
        help="CSV of p, 1-(1-p)^2 and 2p(1-p) on a uniform grid",
    )
    curves.add_argument(
        "--grid",
        type=int,
        default=DEFAULT_GRID_POINTS,
        help=f"grid points over [0, 1] (default {DEFAULT_GRID_POINTS})",
    )
    curves.set_defaults(func=_cmd_recount_curves)

    pair = sub.add_parser(
        "pair", help="four-way breakdown of two consecutive counts (JSON)"
    )
    _add_model_arguments(pair)
    pair.set_defaults(func=_cmd_pair)

    undecidable = sub.add_parser(
        "undecidable", help="probability that n counts end without a clear winner"
    )
    _add_model_arguments(undecidable)
    undecidable.add_argument("--n", type=int, required=True, help="number of counts")
    undecidable.add_argument(
        "--rule",
        choices=["mode-tie", "tolerance-band"],
        default="mode-tie",
        help="tie rule (default mode-tie)",
    )
    undecidable.add_argument(
        "--tolerance",
        type=int,
        default=0,
        help="multiplicity tolerance for tolerance-band (default 0)",
    )
    undecidable.add_argument(
        "--method",
        choices=["enumerate", "bruteforce", "montecarlo"],
        default="enumerate",
        help="estimator (default enumerate)",
    )
    undecidable.add_argument(
        "--trials",
        type=int,
        default=100_000,
        help="Monte Carlo trials (default 100000)",
    )
    undecidable.add_argument(
        "--seed", type=int, default=0, help="Monte Carlo seed (default 0)"
    )
    undecidable.set_defaults(func=_cmd_undecidable)

    streaks = sub.add_parser(
        "streaks", help="streak probability and the chance-only greatness baseline"
    )
    streaks.add_argument(
        "--population", type=int, default=None, help="individuals considered (default 100)"
    )
    streaks.add_argument(
        "--battles", type=int, default=None, help="streak length (default 5)"
    )
    streaks.add_argument(
        "--p-win", type=float, default=None, help="per-battle win probability (default 0.5)"
    )
    streaks.add_argument(
        "--observed",
        type=int,
        default=None,
        help="observed qualifier count; adds the exact binomial upper tail",
    )
    streaks.add_argument(
        "--fermi",
        action="store_true",
        help="preset: battles=5, p-win=0.5, population=100",
    )
    streaks.add_argument(
        "--simulate",
        action="store_true",
        help="also simulate the population and report the observed fraction",
    )
    streaks.add_argument("--seed", type=int, default=0, help="simulation seed (default 0)")
    streaks.set_defaults(func=_cmd_streaks)

    vote = sub.add_parser(
        "vote-sim", help="multi-round redistribution referendum trajectory"
    )
    vote.add_argument("--n-half", type=int, required=True, help="N; society size is 2N")
    vote.add_argument("--k", type=int, required=True, help="winner surplus, 1 <= k <= N-1")
    vote.add_argument(
        "--levy", default="1", help="amount taken per loser, exact rational (e.g. 1, 1/3, 2.5)"
    )
    vote.add_argument(
        "--salary", default="100", help="starting salary, exact rational (default 100)"
    )
    vote.add_argument("--rounds", type=int, default=100, help="referendum rounds (default 100)")
    vote.add_argument("--seed", type=int, default=0, help="loser-selection seed (default 0)")
    vote.add_argument(
        "--floor",
        action="store_true",
        help="clamp salaries at zero after each round (breaks exact conservation)",
    )
    vote.add_argument("--json", action="store_true", help="emit JSON instead of CSV")
    vote.set_defaults(func=_cmd_vote_sim)

    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage and 0 on --help; pass both through.
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except EnumerationBudgetError as exc:
        print(f"miscount: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"miscount: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
