"""Query-plan generation for the identified-side-information retrieval scheme.

A plan is a batch of ``max_unidentified_count + 1`` queries, each naming one
subclass index per class.  The combinatorial core of the privacy argument is
non-repetition: across the whole plan no class contributes the same subclass
index twice, whatever the desired class was.

Every "pick one element of this set" step goes through a Chooser, so the same
builder code is driven three ways: a seeded RNG for protocol runs, exhaustive
tree walks for the exact distribution oracle, and recorded replays for Monte
Carlo audits.  Pick sets are always materialised in sorted order and the pick
sequence is fixed (documented on each builder), which makes generation a pure
function of (scenario, demands, seed).

Builders raise an internal dead-end signal when a pick set runs empty; the
public generators then retry the whole plan with fresh draws from the same
stream.  On scenarios that validate, the single-user builder provably never
dead-ends (the designated query is built first) and the collaborative builder
dead-ends only on contrived side-information overlaps, where retrying is
exactly rejection sampling: the result is uniform over the valid realisations.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    AssumptionViolated,
    ExhaustedIndices,
    OutOfRange,
    PartitionInfeasible,
)
from .scenario import RuleResult, Scenario, validate_scenario

MAX_PLAN_ATTEMPTS = 1000


class DeadEnd(Exception):
    """A pick set ran empty mid-build; the attempt is abandoned."""


class Chooser:
    """One-of-many selection hook; subclasses decide how the index is picked."""

    def pick(self, options: Sequence):
        if not options:
            raise DeadEnd
        if len(options) == 1:
            return options[0]
        return options[self._pick_index(len(options))]

    def _pick_index(self, n: int) -> int:
        raise NotImplementedError


class RandomChooser(Chooser):
    """Uniform picks from a seeded random stream."""

    def __init__(self, rng: random.Random):
        self.rng = rng

    def _pick_index(self, n: int) -> int:
        return self.rng.randrange(n)


@dataclass(frozen=True)
class Query:
    """One query: exactly one (class, subclass) pair per class, ascending."""

    index: int
    pairs: tuple[tuple[int, int], ...]

    def subclass_of(self, i: int) -> int:
        for c, beta in self.pairs:
            if c == i:
                return beta
        raise OutOfRange(f"query {self.index} has no pair for class {i}")


@dataclass(frozen=True)
class PlanSecrets:
    """Client-side metadata; never part of the server projection."""

    demands: tuple[int, ...]
    designated_index: Optional[int] = None
    special_classes: Optional[tuple[int, ...]] = None
    helper_blocks: Optional[tuple[tuple[tuple[int, ...], ...], ...]] = None


@dataclass(frozen=True)
class QueryPlan:
    queries: tuple[Query, ...]
    disclosed_known_count: int
    secrets: Optional[PlanSecrets] = None

    def server_view(self) -> tuple[int, tuple[tuple[tuple[int, int], ...], ...]]:
        """Everything the server receives: bare pair lists plus the code-dimension hint."""
        return (self.disclosed_known_count, tuple(q.pairs for q in self.queries))


def query_owner(j: int, users: int) -> int:
    """User assigned to query j: j mod users, with multiples mapping to the last user."""
    if j < 1 or users < 1:
        raise OutOfRange(f"need j >= 1 and users >= 1, got j={j}, users={users}")
    rem = j % users
    return rem if rem else users


def plan_from_pairs(queries, disclosed_known_count: int) -> QueryPlan:
    """Wrap raw per-query pair lists (e.g. a published transcript) as a plan."""
    wrapped = tuple(
        Query(j, tuple(sorted((int(c), int(b)) for c, b in pairs)))
        for j, pairs in enumerate(queries, start=1)
    )
    return QueryPlan(wrapped, disclosed_known_count)


def _fresh_pool(size: int, *excluded) -> list[int]:
    out = set(range(1, size + 1))
    for ex in excluded:
        out -= ex
    return sorted(out)


def build_single_plan(s: Scenario, desired_class: int, chooser: Chooser) -> QueryPlan:
    """One attempt at a single-user plan; raises DeadEnd on an empty pick set.

    Pick sequence: designated-query position first (identifiable demand only),
    then queries in ascending position (the designated one built first), and
    classes in ascending order inside each query.
    """
    eta = s.identifiable_count
    gamma = s.class_count
    si = s.users[0]
    sizes = s.class_map.sizes
    total = s.query_count()
    used: list[set] = [set() for _ in range(gamma + 1)]
    chosen: dict[int, list[tuple[int, int]]] = {}

    def draw(i: int, pool) -> int:
        beta = chooser.pick(pool)
        used[i].add(beta)
        return beta

    if desired_class <= eta:
        r = chooser.pick(range(1, total + 1))
        pairs = []
        for i in range(1, gamma + 1):
            if i == desired_class:
                pool = _fresh_pool(sizes[i - 1], si.known_indices(i), used[i])
            elif i <= eta:
                pool = sorted(si.known_indices(i) - used[i])
            else:
                pool = _fresh_pool(sizes[i - 1], used[i])
            pairs.append((i, draw(i, pool)))
        chosen[r] = pairs
        for j in range(1, total + 1):
            if j == r:
                continue
            chosen[j] = [(i, draw(i, _fresh_pool(sizes[i - 1], used[i]))) for i in range(1, gamma + 1)]
        secrets = PlanSecrets(demands=(desired_class,), designated_index=r)
    else:
        for j in range(1, total + 1):
            t = (j - 1) % eta + 1
            pairs = []
            for i in range(1, gamma + 1):
                if i == t:
                    pool = _fresh_pool(sizes[i - 1], si.known_indices(i), used[i])
                elif i <= eta:
                    pool = sorted(si.known_indices(i) - used[i])
                else:
                    pool = _fresh_pool(sizes[i - 1], used[i])
                pairs.append((i, draw(i, pool)))
            chosen[j] = pairs
        secrets = PlanSecrets(demands=(desired_class,))

    queries = tuple(Query(j, tuple(chosen[j])) for j in range(1, total + 1))
    return QueryPlan(queries, s.disclosed_known_count("single"), secrets)


def build_multi_plan(s: Scenario, demands, chooser: Chooser) -> QueryPlan:
    """One attempt at a collaborative plan; raises DeadEnd on an empty pick set.

    Pick sequence per query: the special class (when not fixed by a demand),
    its fresh subclass index, then the helper-block partition user by user, the
    helpers' known indices (users ascending, classes ascending inside a block),
    and finally fresh indices for the remaining classes in ascending order.
    """
    eta = s.identifiable_count
    gamma = s.class_count
    users = s.user_count
    sizes = s.class_map.sizes
    budget = s.per_user_known_budget()
    total = s.query_count()
    used: list[set] = [set() for _ in range(gamma + 1)]
    queries = []
    specials = []
    blocks_log = []

    for j in range(1, total + 1):
        u = query_owner(j, users)
        si_u = s.users[u - 1]
        beta: dict[int, int] = {}

        if j <= users and demands[j - 1] <= eta:
            v = demands[j - 1]
        else:
            # Arbitrary identifiable stand-in: keep feasibility high by taking
            # the classes with the largest remaining fresh pool for this user.
            pools = {
                c: len(_fresh_pool(sizes[c - 1], si_u.known_indices(c), used[c]))
                for c in range(1, eta + 1)
            }
            best = max(pools.values())
            if best == 0:
                raise DeadEnd
            v = chooser.pick(sorted(c for c, size in pools.items() if size == best))

        pool = _fresh_pool(sizes[v - 1], si_u.known_indices(v), used[v])
        beta[v] = chooser.pick(pool)
        used[v].add(beta[v])

        helpers = [c for c in range(1, eta + 1) if c != v]
        remaining = helpers
        blocks = []
        for _ in range(users):
            options = list(itertools.combinations(remaining, budget))
            block = chooser.pick(options)
            blocks.append(block)
            remaining = [c for c in remaining if c not in block]
        for i, block in enumerate(blocks, start=1):
            si_i = s.users[i - 1]
            for t in block:
                pool = sorted(si_i.known_indices(t) - used[t])
                beta[t] = chooser.pick(pool)
                used[t].add(beta[t])
        for t in range(1, gamma + 1):
            if t not in beta:
                beta[t] = chooser.pick(_fresh_pool(sizes[t - 1], used[t]))
                used[t].add(beta[t])

        queries.append(Query(j, tuple((i, beta[i]) for i in range(1, gamma + 1))))
        specials.append(v)
        blocks_log.append(tuple(blocks))

    secrets = PlanSecrets(
        demands=tuple(demands),
        special_classes=tuple(specials),
        helper_blocks=tuple(blocks_log),
    )
    return QueryPlan(tuple(queries), s.disclosed_known_count("multi"), secrets)


def _retrying(build, chooser: Chooser) -> QueryPlan:
    for _ in range(MAX_PLAN_ATTEMPTS):
        try:
            return build(chooser)
        except DeadEnd:
            continue
    raise ExhaustedIndices(
        f"no valid plan after {MAX_PLAN_ATTEMPTS} attempts; "
        "the scenario is outside the scheme's guarantees"
    )


def generate_single_user_plan(
    s: Scenario,
    desired_class: int,
    *,
    seed: Optional[int] = None,
    rng: Optional[random.Random] = None,
    force: bool = False,
) -> QueryPlan:
    """Seeded plan for one user wanting any new message of ``desired_class``."""
    if not 1 <= desired_class <= s.class_count:
        raise OutOfRange(f"desired class {desired_class} outside [1, {s.class_count}]")
    if not force:
        report = validate_scenario(s, "single")
        if not report.ok:
            raise AssumptionViolated(report)
    if rng is None:
        rng = random.Random(s.seed if seed is None else seed)
    return _retrying(lambda c: build_single_plan(s, desired_class, c), RandomChooser(rng))


def generate_multi_user_plan(
    s: Scenario,
    demands,
    *,
    seed: Optional[int] = None,
    rng: Optional[random.Random] = None,
    force: bool = False,
) -> QueryPlan:
    """Seeded collaborative plan for one demand per user."""
    demands = tuple(demands)
    if len(demands) != s.user_count:
        raise OutOfRange(f"need {s.user_count} demands, got {len(demands)}")
    for v in demands:
        if not 1 <= v <= s.class_count:
            raise OutOfRange(f"desired class {v} outside [1, {s.class_count}]")
    if (s.identifiable_count - 1) % s.user_count != 0:
        raise PartitionInfeasible(
            f"{s.identifiable_count - 1} helper classes cannot be split evenly "
            f"across {s.user_count} users"
        )
    if not force:
        report = validate_scenario(s, "multi")
        if not report.ok:
            raise AssumptionViolated(report)
    if rng is None:
        rng = random.Random(s.seed if seed is None else seed)
    return _retrying(lambda c: build_multi_plan(s, demands, c), RandomChooser(rng))


@dataclass(frozen=True)
class PlanValidity:
    rules: tuple[RuleResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.rules)

    def failed(self) -> tuple[RuleResult, ...]:
        return tuple(r for r in self.rules if not r.passed)


def _shape_rules(s: Scenario, plan: QueryPlan, mode: str) -> list[RuleResult]:
    gamma = s.class_count
    sizes = s.class_map.sizes
    total = s.query_count()
    rules = [
        RuleResult(
            "plan_length",
            len(plan.queries) == total,
            f"expected {total} queries, got {len(plan.queries)}",
        ),
        RuleResult(
            "disclosed_value",
            plan.disclosed_known_count == s.disclosed_known_count(mode),
            f"expected disclosed count {s.disclosed_known_count(mode)}, "
            f"got {plan.disclosed_known_count}",
        ),
    ]
    bad_shape = []
    for q in plan.queries:
        classes = [c for c, _ in q.pairs]
        if classes != list(range(1, gamma + 1)):
            bad_shape.append((q.index, "classes"))
            continue
        for c, beta in q.pairs:
            if not 1 <= beta <= sizes[c - 1]:
                bad_shape.append((q.index, c))
    rules.append(
        RuleResult(
            "query_shape",
            not bad_shape,
            "one in-range pair per class, ascending",
            tuple(bad_shape),
        )
    )
    dupes = []
    for i in range(1, gamma + 1):
        seen: dict[int, int] = {}
        for q in plan.queries:
            b = q.subclass_of(i)
            if b in seen:
                dupes.append((i, b, seen[b], q.index))
            else:
                seen[b] = q.index
    rules.append(
        RuleResult("non_repetition", not dupes, "no subclass index repeats within a class", tuple(dupes))
    )
    return rules


def check_plan(s: Scenario, demands, plan: QueryPlan, mode: str) -> PlanValidity:
    """Structural validity of a plan against the scheme's selection rules.

    Membership is checked structurally (does some admissible realisation of
    the random choices produce these pairs), so published transcripts can be
    verified without knowing the private draws that made them.
    """
    if mode == "single":
        demands = (demands,) if isinstance(demands, int) else tuple(demands)
        rules = _shape_rules(s, plan, mode)
        if all(r.passed for r in rules):
            rules.extend(_single_rules(s, demands[0], plan))
        return PlanValidity(tuple(rules))
    if mode == "multi":
        demands = tuple(demands)
        rules = _shape_rules(s, plan, mode)
        if all(r.passed for r in rules):
            rules.extend(_multi_rules(s, demands, plan))
        return PlanValidity(tuple(rules))
    raise ValueError(f"unknown mode {mode!r}")


def _single_rules(s: Scenario, v: int, plan: QueryPlan) -> list[RuleResult]:
    eta = s.identifiable_count
    si = s.users[0]
    if v <= eta:
        witnesses = []
        for q in plan.queries:
            if q.subclass_of(v) in si.known_indices(v):
                continue
            if all(
                q.subclass_of(i) in si.known_indices(i)
                for i in range(1, eta + 1)
                if i != v
            ):
                witnesses.append(q.index)
        return [
            RuleResult(
                "designated_query",
                bool(witnesses),
                "some query pairs a fresh desired-class index with known indices "
                "from every other identifiable class",
                tuple(witnesses),
            )
        ]
    bad_fresh = []
    bad_known = []
    for q in plan.queries:
        t = (q.index - 1) % eta + 1
        if q.subclass_of(t) in si.known_indices(t):
            bad_fresh.append((q.index, t))
        for i in range(1, eta + 1):
            if i != t and q.subclass_of(i) not in si.known_indices(i):
                bad_known.append((q.index, i))
    return [
        RuleResult(
            "fresh_rotation",
            not bad_fresh,
            "the rotating identifiable class contributes an index outside the side information",
            tuple(bad_fresh),
        ),
        RuleResult(
            "known_pairs",
            not bad_known,
            "every other identifiable class contributes a known index",
            tuple(bad_known),
        ),
    ]


def _multi_rules(s: Scenario, demands, plan: QueryPlan) -> list[RuleResult]:
    eta = s.identifiable_count
    users = s.user_count
    budget = s.per_user_known_budget()
    bad = []
    for q in plan.queries:
        u = query_owner(q.index, users)
        if q.index <= users and demands[q.index - 1] <= eta:
            candidates = [demands[q.index - 1]]
        else:
            candidates = list(range(1, eta + 1))
        if not any(self_consistent for self_consistent in (
            _assignment_exists(s, q, v, u, budget) for v in candidates
        )):
            bad.append(q.index)
    return [
        RuleResult(
            "per_query_assignment",
            not bad,
            "each query admits a special class (fresh for its owner) and a helper "
            "partition whose blocks are known to their users",
            tuple(bad),
        )
    ]


def _assignment_exists(s: Scenario, q: Query, v: int, owner: int, budget: int) -> bool:
    if q.subclass_of(v) in s.users[owner - 1].known_indices(v):
        return False
    helpers = [c for c in range(1, s.identifiable_count + 1) if c != v]

    def assign(remaining, user):
        if user > s.user_count:
            return not remaining
        for block in itertools.combinations(remaining, budget):
            if all(q.subclass_of(t) in s.users[user - 1].known_indices(t) for t in block):
                rest = [c for c in remaining if c not in block]
                if assign(rest, user + 1):
                    return True
        return False

    return assign(helpers, 1)
