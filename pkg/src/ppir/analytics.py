"""Closed-form rates, advantage predicates, and privacy audits.

All rates are exact rationals; no floating point enters any formula.  The
distribution oracle enumerates every random choice the plan builders can make,
with uniform weight per choice node, and reports the exact probability of each
server-visible plan projection.  Dead-end paths (empty pick sets) carry their
weight into a rejected mass and the surviving projections are renormalised,
which is exactly the distribution of the retrying generators.

Indistinguishability across demands is reported as total-variation distance.
It is diagnostic output only: the scheme's privacy argument is the
non-repetition invariant, which the census here checks directly.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Optional

from .errors import PartitionInfeasible, TooLargeToEnumerate
from .queries import (
    Chooser,
    DeadEnd,
    QueryPlan,
    RandomChooser,
    _retrying,
    build_multi_plan,
    build_single_plan,
)
from .scenario import Scenario

ENUMERATION_LIMIT = 1_000_000


@dataclass(frozen=True)
class RateParams:
    """Everything the rate formulas need, per user."""

    class_count: int
    identifiable_count: int
    class_sizes: tuple[int, ...]
    si_counts: tuple[tuple[int, ...], ...]

    @classmethod
    def from_scenario(cls, s: Scenario) -> "RateParams":
        return cls(
            class_count=s.class_count,
            identifiable_count=s.identifiable_count,
            class_sizes=s.class_map.sizes,
            si_counts=tuple(si.counts for si in s.users),
        )

    @property
    def user_count(self) -> int:
        return len(self.si_counts)

    @property
    def max_unidentified_count(self) -> int:
        eta = self.identifiable_count
        return max(
            (counts[i] for counts in self.si_counts for i in range(eta, self.class_count)),
            default=0,
        )

    @property
    def per_user_known_budget(self) -> int:
        return ceil((self.identifiable_count - 1) / self.user_count)

    def single_user(self, u: int) -> "RateParams":
        return RateParams(
            self.class_count,
            self.identifiable_count,
            self.class_sizes,
            (self.si_counts[u - 1],),
        )


def rate_isi(p: RateParams) -> Fraction:
    """Achieved rate of the identified-side-information scheme (one user)."""
    kun = p.max_unidentified_count
    return Fraction(1, (kun + 1) * (p.class_count - p.identifiable_count + 1))


def rate_usi(p: RateParams) -> Fraction:
    """Capacity of the all-unidentifiable baseline, from the first user's counts."""
    counts = p.si_counts[0]
    total = sum(
        min(k + 1, mu - k) for k, mu in zip(counts, p.class_sizes)
    )
    return Fraction(1, total)


def rate_multi(p: RateParams) -> Fraction:
    """Achieved rate of the collaborative scheme (reduces to rate_isi at one user)."""
    kun = p.max_unidentified_count
    return Fraction(1, (kun + 1) * (p.class_count - p.per_user_known_budget))


def rate_naive_multi(p: RateParams) -> Fraction:
    """Rate of serving each user with an independent single-user run."""
    kun = p.max_unidentified_count
    return Fraction(
        1, p.user_count * (kun + 1) * (p.class_count - p.identifiable_count + 1)
    )


@dataclass(frozen=True)
class ConditionFlag:
    status: str  # "holds" | "fails" | "not-applicable"
    witnesses: tuple = ()


@dataclass(frozen=True)
class ComparisonReport:
    rate_isi: Fraction
    rate_usi: Fraction
    rate_multi: Fraction
    rate_naive_multi: Fraction
    flags: dict


# The three analytic conditions under which identifiability provably beats the
# all-unidentifiable baseline.
SPARSE_SIDE_INFORMATION = "sparse_side_information"
UNIFORM_DENSE_SIDE_INFORMATION = "uniform_dense_side_information"
SINGLE_IDENTIFIABLE_CLASS = "single_identifiable_class"


def comparison_conditions(p: RateParams) -> ComparisonReport:
    """Evaluate the advantage conditions exactly; meaningful for one-user params
    that satisfy the scheme's own assumptions."""
    eta = p.identifiable_count
    gamma = p.class_count
    counts = p.si_counts[0]
    sizes = p.class_sizes
    kun = p.max_unidentified_count
    flags = {}

    sparse_bad = tuple(
        i + 1 for i in range(gamma) if counts[i] + 1 > sizes[i] - counts[i]
    )
    flat_bad = tuple(i + 1 for i in range(eta, gamma) if counts[i] != kun)
    flags[SPARSE_SIDE_INFORMATION] = ConditionFlag(
        "holds" if not sparse_bad and not flat_bad else "fails",
        sparse_bad + flat_bad,
    )

    id_counts = set(counts[:eta])
    un_counts = set(counts[eta:])
    uniform_shape = (
        len(id_counts) == 1 and len(un_counts) <= 1 and len(set(sizes)) == 1
    )
    if not uniform_shape:
        flags[UNIFORM_DENSE_SIDE_INFORMATION] = ConditionFlag("not-applicable")
    else:
        mu = sizes[0]
        k = counts[0]
        dense_bad = tuple(
            i + 1 for i in range(gamma) if counts[i] + 1 < mu - counts[i]
        )
        threshold = k + ceil((gamma - eta + 1) * (kun + 1) / gamma)
        ok = not dense_bad and mu >= threshold
        flags[UNIFORM_DENSE_SIDE_INFORMATION] = ConditionFlag(
            "holds" if ok else "fails", dense_bad
        )

    dense_bad = tuple(
        i + 1 for i in range(gamma) if counts[i] + 1 < sizes[i] - counts[i]
    )
    ok = eta == 1 and not dense_bad
    flags[SINGLE_IDENTIFIABLE_CLASS] = ConditionFlag(
        "holds" if ok else "fails",
        dense_bad if eta == 1 else ("identifiable_count", eta),
    )

    r_isi, r_usi = rate_isi(p), rate_usi(p)
    for name, flag in flags.items():
        if flag.status == "holds" and r_isi < r_usi:
            raise RuntimeError(f"{name} holds but the rate inequality fails: {r_isi} < {r_usi}")
    return ComparisonReport(r_isi, r_usi, rate_multi(p), rate_naive_multi(p), flags)


@dataclass(frozen=True)
class NonRepetitionResult:
    ok: bool
    witnesses: tuple = ()  # (class, subclass, first query, second query)


def audit_non_repetition(plan: QueryPlan) -> NonRepetitionResult:
    """Pass iff no class contributes the same subclass index twice in the plan."""
    witnesses = []
    by_class: dict[int, dict[int, int]] = defaultdict(dict)
    for q in plan.queries:
        for i, beta in q.pairs:
            if beta in by_class[i]:
                witnesses.append((i, beta, by_class[i][beta], q.index))
            else:
                by_class[i][beta] = q.index
    return NonRepetitionResult(not witnesses, tuple(witnesses))


class _ReplayChooser(Chooser):
    """Replays a recorded choice prefix, then takes first options; logs the tree shape."""

    def __init__(self, prefix):
        self.prefix = prefix
        self.path: list[int] = []
        self.sizes: list[int] = []

    def _pick_index(self, n: int) -> int:
        depth = len(self.path)
        idx = self.prefix[depth] if depth < len(self.prefix) else 0
        self.path.append(idx)
        self.sizes.append(n)
        return idx


def _plan_builder(s: Scenario, demands, mode: str):
    if mode == "single":
        v = demands if isinstance(demands, int) else demands[0]
        return lambda chooser: build_single_plan(s, v, chooser)
    demands = tuple(demands)
    if (s.identifiable_count - 1) % s.user_count != 0:
        raise PartitionInfeasible(
            f"{s.identifiable_count - 1} helper classes cannot be split evenly "
            f"across {s.user_count} users"
        )
    return lambda chooser: build_multi_plan(s, demands, chooser)


def query_distribution(
    s: Scenario, demands, mode: str = "single", *, limit: int = ENUMERATION_LIMIT
) -> dict:
    """Exact probability of every server-visible plan projection.

    Walks every branch of the builders' choice tree with uniform weight per
    pick; this is the brute-force oracle the Monte Carlo estimator is checked
    against.  Raises TooLargeToEnumerate past ``limit`` leaves.
    """
    build = _plan_builder(s, demands, mode)
    results: dict = defaultdict(Fraction)
    dead = Fraction(0)
    prefix: list[int] = []
    leaves = 0
    while True:
        leaves += 1
        if leaves > limit:
            raise TooLargeToEnumerate(f"more than {limit} choice paths")
        chooser = _ReplayChooser(prefix)
        try:
            plan = build(chooser)
        except DeadEnd:
            plan = None
        prob = Fraction(1)
        for n in chooser.sizes:
            prob /= n
        if plan is None:
            dead += prob
        else:
            results[plan.server_view()] += prob
        path, sizes = chooser.path, chooser.sizes
        while path and path[-1] + 1 >= sizes[len(path) - 1]:
            path.pop()
            sizes.pop()
        if not path:
            break
        path[-1] += 1
        prefix = path
    if dead:
        kept = 1 - dead
        return {k: v / kept for k, v in results.items()}
    return dict(results)


def sample_query_distribution(
    s: Scenario, demands, mode: str = "single", *, samples: int, seed: int = 0
) -> dict:
    """Empirical projection distribution from running the actual generator."""
    build = _plan_builder(s, demands, mode)
    chooser = RandomChooser(random.Random(seed))
    counts: Counter = Counter()
    for _ in range(samples):
        counts[_retrying(build, chooser).server_view()] += 1
    return {k: Fraction(v, samples) for k, v in counts.items()}


def tv_distance(a: dict, b: dict) -> Fraction:
    """Total-variation distance between two projection distributions."""
    keys = set(a) | set(b)
    return sum((abs(a.get(k, Fraction(0)) - b.get(k, Fraction(0))) for k in keys), Fraction(0)) / 2


@dataclass(frozen=True)
class DistributionAudit:
    method: str  # "enumeration" | "monte-carlo"
    samples: Optional[int]
    pairs: tuple  # ((demands_a, demands_b, tv), ...)


@dataclass(frozen=True)
class PrivacyReport:
    mode: str
    runs: int
    demand_choices: tuple
    checks: int
    failures: int
    pass_rate: Fraction
    witnesses: tuple
    distribution: Optional[DistributionAudit]


def _demand_space(s: Scenario, mode: str):
    if mode == "single":
        return tuple((v,) for v in range(1, s.class_count + 1))
    return tuple(itertools.product(range(1, s.class_count + 1), repeat=s.user_count))


def privacy_report(
    s: Scenario,
    mode: str = "single",
    runs: int = 1000,
    *,
    base_seed: int = 0,
    enum_limit: int = ENUMERATION_LIMIT,
    mc_samples: int = 2000,
) -> PrivacyReport:
    """Non-repetition census over seeded runs of every demand choice, plus a
    distribution audit (exact when enumerable, Monte Carlo otherwise)."""
    demand_space = _demand_space(s, mode)
    checks = 0
    failures = 0
    witnesses = []
    for d_idx, demands in enumerate(demand_space):
        build = _plan_builder(s, demands if mode == "multi" else demands[0], mode)
        for t in range(runs):
            chooser = RandomChooser(random.Random(base_seed + 1_000_003 * d_idx + t))
            plan = _retrying(build, chooser)
            checks += 1
            result = audit_non_repetition(plan)
            if not result.ok:
                failures += 1
                if len(witnesses) < 10:
                    witnesses.append((demands, t, result.witnesses))
    pass_rate = Fraction(checks - failures, checks) if checks else Fraction(1)

    distribution = None
    if demand_space:
        try:
            dists = {
                d: query_distribution(s, d if mode == "multi" else d[0], mode, limit=enum_limit)
                for d in demand_space
            }
            method, samples = "enumeration", None
        except TooLargeToEnumerate:
            dists = {
                d: sample_query_distribution(
                    s,
                    d if mode == "multi" else d[0],
                    mode,
                    samples=mc_samples,
                    seed=base_seed + 7_919 * i,
                )
                for i, d in enumerate(demand_space)
            }
            method, samples = "monte-carlo", mc_samples
        pairs = tuple(
            (a, b, tv_distance(dists[a], dists[b]))
            for a, b in itertools.combinations(demand_space, 2)
        )
        distribution = DistributionAudit(method, samples, pairs)

    return PrivacyReport(
        mode=mode,
        runs=runs,
        demand_choices=demand_space,
        checks=checks,
        failures=failures,
        pass_rate=pass_rate,
        witnesses=tuple(witnesses),
        distribution=distribution,
    )
