"""Command-line interface.

Exit codes: 0 success, 2 validation error, 3 guard exceeded, 4 oracle
mismatch.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from decimal import Decimal, InvalidOperation
from pathlib import Path

from . import oracle
from .axioms import run_table1_suite
from .core import FINITE_SETTINGS, SETTINGS, AggregationSpec, GuardExceeded, ValidationError, validate_election
from .io import dumps, load_election, result_to_dict
from .line import figure1_curve
from .metrics import document_distance, metric_for
from .solve import aggregate

EXIT_OK, EXIT_VALIDATION, EXIT_GUARD, EXIT_MISMATCH = 0, 2, 3, 4


def parse_p(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity", "∞"):
        return math.inf
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number or 'inf': {text!r}") from None


def parse_bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("true", "1", "yes"):
        return True
    if t in ("false", "0", "no"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


def parse_grid(text: str) -> list[float]:
    """``start:stop:step`` inclusive of ``stop``, computed in decimal to avoid drift."""
    try:
        start, stop, step = (Decimal(x) for x in text.split(":"))
    except (ValueError, InvalidOperation):
        raise argparse.ArgumentTypeError(f"grid must be start:stop:step, got {text!r}") from None
    if step <= 0 or stop < start:
        raise argparse.ArgumentTypeError("grid needs step > 0 and stop >= start")
    out, x = [], start
    while x <= stop:
        out.append(float(x))
        x += step
    return out


def _spec_from(args) -> AggregationSpec:
    return AggregationSpec(
        method=args.method.replace("-", "_"),
        p=args.p,
        tolerance=args.tolerance,
        max_iterations=args.max_iter,
        tie_break={"report-all": "report_all", "lex": "lexicographic"}[args.tie_break],
        seed=args.seed,
        strict=args.strict_condorcet,
    )


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_aggregate(args) -> int:
    election = load_election(args.input)
    result = aggregate(election, _spec_from(args))
    _emit(dumps(result_to_dict(result)), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    election = load_election(args.input)
    if election.setting not in FINITE_SETTINGS:
        raise ValidationError(f"no exact oracle for the {election.setting} setting")
    spec = _spec_from(args)
    space = oracle.enumerate_space(election)
    if spec.method == "condorcet":
        expected = oracle.brute_force_condorcet(election, space, spec)
    else:
        expected = oracle.brute_force_lp(election, space, spec)
    got = aggregate(election, spec)
    same = expected.keys() == got.keys()
    if spec.method != "condorcet" and same:
        same = math.isclose(expected.objective, got.objective, rel_tol=1e-9, abs_tol=1e-12)
    report = {
        "match": same,
        "space_size": len(space),
        "solver": result_to_dict(got),
        "oracle": result_to_dict(expected),
    }
    _emit(dumps(report), args.output)
    return EXIT_OK if same else EXIT_MISMATCH


def cmd_axioms(args) -> int:
    report = run_table1_suite(seed=args.seed, trials=args.trials)
    sys.stdout.write(report.format() + "\n")
    if args.output:
        Path(args.output).write_text(dumps(report.as_dict()), encoding="utf-8")
    return EXIT_OK if report.all_reproduced else EXIT_MISMATCH


def cmd_distance(args) -> int:
    try:
        x, y = json.loads(args.x), json.loads(args.y)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON point ({exc})") from None
    raw = {"setting": args.setting, "voters": [x, y]}
    if args.setting == "committee_fixed_k":
        raw["setting"] = "committee"
    if args.setting == "ranking":
        raw["alternatives"] = list(x) if isinstance(x, list) else None
    election = validate_election(raw)
    a, b = election.voters
    if args.setting == "legislation":
        ell = args.ell if args.ell is not None else election.ell
        d = document_distance(a, b, ell)
    else:
        d = metric_for(election)(a, b)
    sys.stdout.write(f"{d!r}\n")
    return EXIT_OK


def cmd_figure1(args) -> int:
    lines = ["p,consensus_outlier,polarized"]
    for p in args.p_grid:
        if p <= 1:
            raise ValidationError("figure1 needs p > 1")
        a = figure1_curve(args.n, p, "consensus_outlier")
        b = figure1_curve(args.n, p, "polarized")
        lines.append(f"{p:g},{a:.12f},{b:.12f}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="metricvote", description="Metric-space vote aggregation.")
    sub = parser.add_subparsers(dest="command", required=True)

    def solver_flags(sp):
        sp.add_argument("--input", required=True)
        sp.add_argument("--method", required=True, choices=["condorcet", "lp", "reduced-lp"])
        sp.add_argument("--p", type=parse_p, default=1.0)
        sp.add_argument("--tie-break", choices=["report-all", "lex"], default="report-all")
        sp.add_argument("--tolerance", type=float, default=1e-9)
        sp.add_argument("--max-iter", type=int, default=100_000)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--strict-condorcet", type=parse_bool, default=True)
        sp.add_argument("--output")

    sp = sub.add_parser("aggregate", help="compute winners")
    solver_flags(sp)
    sp.set_defaults(func=cmd_aggregate)

    sp = sub.add_parser("verify", help="compare the solver with the brute-force oracle")
    solver_flags(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("axioms", help="run the axiom suite")
    sp.add_argument("--suite", choices=["table1"], default="table1")
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_axioms)

    sp = sub.add_parser("distance", help="distance between two ballots")
    sp.add_argument("--setting", required=True, choices=list(SETTINGS))
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)
    sp.add_argument("--ell", type=int)
    sp.set_defaults(func=cmd_distance)

    sp = sub.add_parser("figure1", help="L_p winner against p for two outlier profiles (CSV)")
    sp.add_argument("--n", type=int, default=101)
    sp.add_argument("--p-grid", type=parse_grid, default=parse_grid("1.1:8:0.1"))
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_figure1)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_VALIDATION if exc.code else EXIT_OK
    try:
        return args.func(args)
    except GuardExceeded as exc:
        sys.stderr.write(f"guard exceeded: {exc}\n")
        return EXIT_GUARD
    except (ValidationError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VALIDATION


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
