"""Command-line front end.

Subcommands:

    ppir run      scenario.json --demand V [--demand V2 ...] [--mode single|multi]
                  [--seed N] [--force] [--out trace.json]
    ppir audit    scenario.json [--runs N] [--mode single|multi] [--seed N] [--out report.json]
    ppir rates    scenario.json [--out report.json]
    ppir selftest

Exit codes: 0 success, 2 parse error, 3 validation refused (or the plan search
exhausted its retries), 4 recovery failure.  Identical inputs produce
byte-identical output files.
"""

from __future__ import annotations

import argparse
import sys

from .analytics import (
    RateParams,
    comparison_conditions,
    privacy_report,
    rate_multi,
    rate_naive_multi,
)
from .errors import (
    AssumptionViolated,
    ExhaustedIndices,
    MalformedScenario,
    PartitionInfeasible,
    RecoveryFailed,
)
from .exchange import run_session
from .scenario import validate_scenario
from .scenario_io import (
    REPORT_FORMAT,
    comparison_to_dict,
    dump_json,
    load_scenario,
    privacy_to_dict,
    rates_to_dict,
    trace_to_dict,
    validation_to_dict,
)
from .selftest import run_selftest

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_RECOVERY = 4


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _infer_mode(args, user_count: int) -> str:
    if args.mode:
        return args.mode
    return "single" if user_count == 1 else "multi"


def cmd_run(args) -> int:
    loaded = load_scenario(args.scenario)
    scenario = loaded.scenario
    mode = _infer_mode(args, scenario.user_count)
    if not args.demand:
        print("error: at least one --demand is required", file=sys.stderr)
        return EXIT_PARSE
    if mode == "single":
        if len(args.demand) != 1:
            print("error: single mode takes exactly one --demand", file=sys.stderr)
            return EXIT_PARSE
        demands = args.demand[0]
    else:
        demands = tuple(args.demand)
    report = validate_scenario(scenario, mode)
    if not report.ok and not args.force:
        print(
            "validation refused: " + ", ".join(r.name for r in report.failed()),
            file=sys.stderr,
        )
        return EXIT_VALIDATION
    trace = run_session(
        scenario,
        demands,
        seed=args.seed,
        explicit_generator=loaded.explicit_generator,
        force=args.force,
    )
    _emit(dump_json(trace_to_dict(trace)), args.out)
    return EXIT_OK


def cmd_audit(args) -> int:
    loaded = load_scenario(args.scenario)
    scenario = loaded.scenario
    mode = _infer_mode(args, scenario.user_count)
    report = privacy_report(
        scenario,
        mode,
        runs=args.runs,
        base_seed=scenario.seed if args.seed is None else args.seed,
    )
    doc = {
        "format": REPORT_FORMAT,
        "scenario_validation": validation_to_dict(validate_scenario(scenario, mode)),
        "privacy": privacy_to_dict(report),
    }
    _emit(dump_json(doc), args.out)
    return EXIT_OK


def cmd_rates(args) -> int:
    loaded = load_scenario(args.scenario)
    scenario = loaded.scenario
    params = RateParams.from_scenario(scenario)
    comparisons = [
        comparison_conditions(params.single_user(u))
        for u in range(1, params.user_count + 1)
    ]
    doc = {
        "format": REPORT_FORMAT,
        "rates": rates_to_dict(comparisons, rate_multi(params), rate_naive_multi(params)),
        "comparison_conditions": (
            comparison_to_dict(comparisons[0]) if params.user_count == 1 else None
        ),
    }
    _emit(dump_json(doc), args.out)
    return EXIT_OK


def cmd_selftest(_args) -> int:
    failures = run_selftest()
    return EXIT_OK if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ppir",
        description="Pliable private information retrieval with identifiable side information: "
        "plan generation, blind server answers, client decoding, and audits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute one protocol session and write its trace")
    run.add_argument("scenario", help="scenario JSON file")
    run.add_argument("--demand", type=int, action="append", help="desired class (repeat per user in multi mode)")
    run.add_argument("--mode", choices=("single", "multi"), help="default: single iff one user")
    run.add_argument("--seed", type=int, help="override the scenario seed")
    run.add_argument("--force", action="store_true", help="run even if validation fails")
    run.add_argument("--out", help="trace file path (default: stdout)")
    run.set_defaults(handler=cmd_run)

    audit = sub.add_parser("audit", help="non-repetition census and distribution audit")
    audit.add_argument("scenario")
    audit.add_argument("--runs", type=int, default=1000, help="seeded plans per demand choice (default 1000)")
    audit.add_argument("--mode", choices=("single", "multi"))
    audit.add_argument("--seed", type=int, help="census base seed (default: scenario seed)")
    audit.add_argument("--out", help="report file path (default: stdout)")
    audit.set_defaults(handler=cmd_audit)

    rates = sub.add_parser("rates", help="closed-form rates and advantage conditions")
    rates.add_argument("scenario")
    rates.add_argument("--out", help="report file path (default: stdout)")
    rates.set_defaults(handler=cmd_rates)

    selftest = sub.add_parser("selftest", help="run the embedded golden checks")
    selftest.set_defaults(handler=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except MalformedScenario as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (AssumptionViolated, PartitionInfeasible, ExhaustedIndices) as exc:
        print(f"validation refused: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except RecoveryFailed as exc:
        print(f"recovery failed: {exc}", file=sys.stderr)
        return EXIT_RECOVERY


if __name__ == "__main__":
    sys.exit(main())
