"""JSON document formats: scenario files in, trace and report files out.

Scenario schema (all indices 1-based):

    {
      "field_order": 11,            // prime
      "symbols_per_message": 2,
      "eta": 3,                     // identifiable classes; must be the first ones listed
      "seed": 7,
      "classes": [                  // one array per class, one descriptor per message;
        [[0, 1], "random", ...],    // a descriptor is an explicit symbol array or "random"
        ...
      ],
      "users": [                    // one entry per user
        {"side_information": [[3, 4, 7], [1, 2], ...],   // subclass indices per class
         "identified_classes": [1, 2, 3]}                // optional; must equal [1..eta]
      ],
      "explicit_generator": [[...], ...]   // optional k x n matrix, validated on load
    }

Global message indices are assigned in listing order (class 1 first).
"random" symbols expand deterministically from (seed, global index, symbol
position); see scenario.random_symbol.  Trace and report files are emitted
with sorted keys and a trailing newline, so identical inputs give
byte-identical files.  Rates are serialized as exact fraction strings, never
floats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .analytics import ComparisonReport, PrivacyReport
from .errors import MalformedScenario, PpirError
from .exchange import SessionTrace
from .field import PrimeField
from .mds import Generator, generator_from_explicit
from .scenario import (
    ClassMap,
    MessageStore,
    Scenario,
    SideInformation,
    ValidationReport,
    random_symbol,
    sequential_class_map,
)

TRACE_FORMAT = "ppir-trace/1"
REPORT_FORMAT = "ppir-report/1"


@dataclass(frozen=True)
class LoadedScenario:
    scenario: Scenario
    explicit_generator: Optional[Generator]


def _require(doc: dict, key: str, kind) -> object:
    if key not in doc:
        raise MalformedScenario(f"missing key {key!r}")
    value = doc[key]
    if not isinstance(value, kind):
        raise MalformedScenario(f"key {key!r} must be {kind.__name__}, got {type(value).__name__}")
    return value


def scenario_from_dict(doc: dict) -> LoadedScenario:
    if not isinstance(doc, dict):
        raise MalformedScenario("scenario document must be a JSON object")
    order = _require(doc, "field_order", int)
    length = _require(doc, "symbols_per_message", int)
    eta = _require(doc, "eta", int)
    seed = doc.get("seed", 0)
    if not isinstance(seed, int) or seed < 0:
        raise MalformedScenario("seed must be a non-negative integer")
    classes = _require(doc, "classes", list)
    users = _require(doc, "users", list)

    try:
        field = PrimeField(order)
    except PpirError as exc:
        raise MalformedScenario(f"bad field_order: {exc}") from exc
    if length < 1:
        raise MalformedScenario("symbols_per_message must be >= 1")

    sizes = []
    for i, members in enumerate(classes, start=1):
        if not isinstance(members, list) or not members:
            raise MalformedScenario(f"class {i} must be a non-empty array of descriptors")
        sizes.append(len(members))
    class_map = sequential_class_map(sizes)

    rows = []
    f = 0
    for members in classes:
        for descriptor in members:
            f += 1
            if descriptor == "random":
                rows.append(
                    tuple(random_symbol(seed, f, ell, order) for ell in range(1, length + 1))
                )
            elif isinstance(descriptor, list):
                if len(descriptor) != length:
                    raise MalformedScenario(
                        f"message {f}: expected {length} symbols, got {len(descriptor)}"
                    )
                for v in descriptor:
                    if not isinstance(v, int) or not 0 <= v < order:
                        raise MalformedScenario(f"message {f}: symbol {v!r} outside [0, {order})")
                rows.append(tuple(descriptor))
            else:
                raise MalformedScenario(
                    f"message {f}: descriptor must be a symbol array or \"random\""
                )
    store = MessageStore(field, tuple(rows))

    if not users:
        raise MalformedScenario("need at least one user")
    side_infos = []
    for u, entry in enumerate(users, start=1):
        if not isinstance(entry, dict):
            raise MalformedScenario(f"user {u} must be an object")
        lists = _require(entry, "side_information", list)
        if len(lists) != len(classes):
            raise MalformedScenario(
                f"user {u}: expected {len(classes)} side-information lists, got {len(lists)}"
            )
        index_sets = []
        for i, indices in enumerate(lists, start=1):
            if not isinstance(indices, list):
                raise MalformedScenario(f"user {u} class {i}: expected an index array")
            if len(set(indices)) != len(indices):
                raise MalformedScenario(f"user {u} class {i}: duplicate subclass indices")
            index_sets.append(frozenset(indices))
        flagged = entry.get("identified_classes")
        if flagged is not None and list(flagged) != list(range(1, eta + 1)):
            raise MalformedScenario(
                f"user {u}: identified_classes must equal [1..{eta}] (identifiable classes are the first eta listed)"
            )
        side_infos.append(SideInformation(eta, tuple(index_sets)))

    try:
        scenario = Scenario(store, class_map, tuple(side_infos), eta, seed)
    except PpirError as exc:
        raise MalformedScenario(str(exc)) from exc

    explicit = None
    if "explicit_generator" in doc and doc["explicit_generator"] is not None:
        matrix = doc["explicit_generator"]
        if not isinstance(matrix, list):
            raise MalformedScenario("explicit_generator must be a matrix (array of rows)")
        try:
            explicit = generator_from_explicit(matrix, field)
        except PpirError as exc:
            raise MalformedScenario(f"bad explicit_generator: {exc}") from exc
    return LoadedScenario(scenario, explicit)


def load_scenario(path) -> LoadedScenario:
    try:
        with open(path, encoding="utf-8") as handle:
            doc = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedScenario(f"cannot parse {path}: {exc}") from exc
    return scenario_from_dict(doc)


def _frac(value: Fraction) -> str:
    return str(Fraction(value))


def trace_to_dict(trace: SessionTrace) -> dict:
    disclosed, queries = trace.plan_view
    return {
        "format": TRACE_FORMAT,
        "mode": trace.mode,
        "demands": list(trace.demands),
        "seed": trace.seed,
        "field_order": trace.field_order,
        "code": {"length": trace.code_length, "dimension": trace.code_dimension},
        "disclosed_known_count": disclosed,
        "plan": [[list(pair) for pair in q] for q in queries],
        "answers": [
            {"query": a.query_index, "parities": [list(row) for row in a.parities]}
            for a in trace.answers
        ],
        "users": [
            {
                "user": u.user,
                "desired_class": u.desired_class,
                "decoded_queries": list(u.decoded_queries),
                "decoded": [list(entry) for entry in u.decoded],
                "new_messages": [list(entry) for entry in u.new_messages],
                "witness_symbols": list(u.witness_symbols),
            }
            for u in trace.users
        ],
        "downloaded_symbols": trace.downloaded_symbols,
        "rate": _frac(trace.rate),
    }


def validation_to_dict(report: ValidationReport) -> dict:
    return {
        "mode": report.mode,
        "ok": report.ok,
        "rules": [
            {
                "name": r.name,
                "passed": r.passed,
                "detail": r.detail,
                "witnesses": [list(w) if isinstance(w, tuple) else w for w in r.witnesses],
            }
            for r in report.rules
        ],
    }


def rates_to_dict(comparisons: list[ComparisonReport], multi: Fraction, naive: Fraction) -> dict:
    doc = {
        "identified": [_frac(c.rate_isi) for c in comparisons],
        "unidentified_baseline": [_frac(c.rate_usi) for c in comparisons],
        "multi_user": _frac(multi),
        "naive_multi_user": _frac(naive),
    }
    return doc


def comparison_to_dict(report: Optional[ComparisonReport]) -> Optional[dict]:
    if report is None:
        return None
    return {
        name: {"status": flag.status, "witnesses": [list(w) if isinstance(w, tuple) else w for w in flag.witnesses]}
        for name, flag in report.flags.items()
    }


def privacy_to_dict(report: PrivacyReport) -> dict:
    doc = {
        "mode": report.mode,
        "runs_per_demand": report.runs,
        "demand_choices": [list(d) for d in report.demand_choices],
        "non_repetition_checks": report.checks,
        "failures": report.failures,
        "pass_rate": _frac(report.pass_rate),
        "witnesses": [
            {"demands": list(d), "trial": t, "repeats": [list(w) for w in ws]}
            for d, t, ws in report.witnesses
        ],
    }
    if report.distribution is None:
        doc["distribution"] = None
    else:
        doc["distribution"] = {
            "method": report.distribution.method,
            "samples": report.distribution.samples,
            "pairs": [
                {"demands_a": list(a), "demands_b": list(b), "tv": _frac(tv)}
                for a, b, tv in report.distribution.pairs
            ],
        }
    return doc


def dump_json(doc: dict) -> str:
    """Canonical serialization: sorted keys, fixed separators, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"
