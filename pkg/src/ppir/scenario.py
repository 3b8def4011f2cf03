"""Database and user model: messages, class partition, side information, validation.

Conventions used throughout the package:

* all indices are 1-based: global message index f in [1, F], class index
  i in [1, class_count], subclass index in [1, size of class i];
* a message's subclass index is its position in its class's listing order,
  and server and users share that order;
* the first ``identifiable_count`` classes are the identifiable ones: users
  know the exact subclass indices of their side information there.  For the
  remaining classes users know only how many messages they hold; the exact
  indices are stored as simulator ground truth and are reachable only through
  :meth:`SideInformation.oracle_indices`.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from math import ceil

from .errors import MalformedScenario, OutOfRange, UnidentifiableAccess
from .field import PrimeField


@dataclass(frozen=True)
class MessageStore:
    """All messages held by the server: message_count rows of symbols_per_message field symbols."""

    field: PrimeField
    messages: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.messages) < 2:
            raise MalformedScenario("need at least 2 messages")
        length = len(self.messages[0])
        if length < 1:
            raise MalformedScenario("messages need at least 1 symbol")
        q = self.field.order
        for f, row in enumerate(self.messages, start=1):
            if len(row) != length:
                raise MalformedScenario(f"message {f} has {len(row)} symbols, expected {length}")
            for v in row:
                if not isinstance(v, int) or not 0 <= v < q:
                    raise MalformedScenario(f"message {f} symbol {v!r} outside [0, {q})")

    @property
    def message_count(self) -> int:
        return len(self.messages)

    @property
    def symbols_per_message(self) -> int:
        return len(self.messages[0])

    def symbols(self, f: int) -> tuple[int, ...]:
        if not 1 <= f <= self.message_count:
            raise OutOfRange(f"message index {f} outside [1, {self.message_count}]")
        return self.messages[f - 1]


class ClassMap:
    """Partition of the global message indices [1, F] into ordered classes.

    Position beta within class i's list is that message's subclass index, so
    the listing order of each class defines the (class, subclass) addressing.
    """

    def __init__(self, classes):
        classes = tuple(tuple(c) for c in classes)
        if len(classes) < 2:
            raise MalformedScenario("need at least 2 classes")
        seen = {}
        for i, members in enumerate(classes, start=1):
            if not members:
                raise MalformedScenario(f"class {i} is empty")
            for f in members:
                if f in seen:
                    raise MalformedScenario(f"message {f} appears in classes {seen[f]} and {i}")
                seen[f] = i
        total = len(seen)
        if set(seen) != set(range(1, total + 1)):
            raise MalformedScenario("class lists must partition exactly [1, F]")
        self.classes = classes
        self._pair_of = {}
        for i, members in enumerate(classes, start=1):
            for beta, f in enumerate(members, start=1):
                self._pair_of[f] = (i, beta)

    @property
    def class_count(self) -> int:
        return len(self.classes)

    @property
    def total_messages(self) -> int:
        return len(self._pair_of)

    def size(self, i: int) -> int:
        self._check_class(i)
        return len(self.classes[i - 1])

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    def pair_to_global(self, i: int, beta: int) -> int:
        self._check_class(i)
        if not 1 <= beta <= len(self.classes[i - 1]):
            raise OutOfRange(f"subclass {beta} outside [1, {len(self.classes[i - 1])}] for class {i}")
        return self.classes[i - 1][beta - 1]

    def global_to_pair(self, f: int) -> tuple[int, int]:
        try:
            return self._pair_of[f]
        except KeyError:
            raise OutOfRange(f"global index {f} outside [1, {self.total_messages}]") from None

    def _check_class(self, i: int) -> None:
        if not 1 <= i <= len(self.classes):
            raise OutOfRange(f"class {i} outside [1, {len(self.classes)}]")

    def __eq__(self, other):
        return isinstance(other, ClassMap) and self.classes == other.classes

    def __hash__(self):
        return hash(self.classes)

    def __repr__(self):
        return f"ClassMap(sizes={self.sizes})"


@dataclass(frozen=True)
class SideInformation:
    """One user's side information as per-class subclass index sets.

    ``indices`` is simulator ground truth for every class.  User-facing code
    must go through :meth:`known_indices`, which refuses unidentifiable
    classes, or :meth:`count`, which is always allowed.
    """

    identifiable_count: int
    indices: tuple[frozenset, ...]

    def __post_init__(self):
        if not 1 <= self.identifiable_count <= len(self.indices):
            raise MalformedScenario(
                f"identifiable count {self.identifiable_count} outside [1, {len(self.indices)}]"
            )

    @property
    def class_count(self) -> int:
        return len(self.indices)

    def count(self, i: int) -> int:
        self._check_class(i)
        return len(self.indices[i - 1])

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.indices)

    @property
    def total(self) -> int:
        return sum(len(s) for s in self.indices)

    def known_indices(self, i: int) -> frozenset:
        """Subclass indices the user itself can see; identifiable classes only."""
        self._check_class(i)
        if i > self.identifiable_count:
            raise UnidentifiableAccess(f"class {i} is unidentifiable; only its count is exposed")
        return self.indices[i - 1]

    def oracle_indices(self, i: int) -> frozenset:
        """Ground-truth indices for any class; simulator and audit use only."""
        self._check_class(i)
        return self.indices[i - 1]

    def _check_class(self, i: int) -> None:
        if not 1 <= i <= len(self.indices):
            raise OutOfRange(f"class {i} outside [1, {len(self.indices)}]")


@dataclass(frozen=True)
class Scenario:
    """Complete problem instance: store, partition, per-user side information."""

    store: MessageStore
    class_map: ClassMap
    users: tuple[SideInformation, ...]
    identifiable_count: int
    seed: int = 0

    def __post_init__(self):
        cm = self.class_map
        if cm.total_messages != self.store.message_count:
            raise MalformedScenario(
                f"class map covers {cm.total_messages} messages, store has {self.store.message_count}"
            )
        if not 1 <= self.identifiable_count <= cm.class_count:
            raise MalformedScenario(
                f"identifiable count {self.identifiable_count} outside [1, {cm.class_count}]"
            )
        if not self.users:
            raise MalformedScenario("need at least one user")
        for u, si in enumerate(self.users, start=1):
            if si.class_count != cm.class_count:
                raise MalformedScenario(f"user {u} covers {si.class_count} classes, expected {cm.class_count}")
            if si.identifiable_count != self.identifiable_count:
                raise MalformedScenario(f"user {u} disagrees on the identifiable-class count")
            for i in range(1, cm.class_count + 1):
                bad = [b for b in si.oracle_indices(i) if not 1 <= b <= cm.size(i)]
                if bad:
                    raise MalformedScenario(f"user {u} class {i}: subclass indices {bad} out of range")

    @property
    def class_count(self) -> int:
        return self.class_map.class_count

    @property
    def user_count(self) -> int:
        return len(self.users)

    def max_unidentified_count(self) -> int:
        """Largest side-information count over unidentifiable classes and all users (0 if none)."""
        eta = self.identifiable_count
        best = 0
        for si in self.users:
            for i in range(eta + 1, self.class_count + 1):
                best = max(best, si.count(i))
        return best

    def query_count(self) -> int:
        return self.max_unidentified_count() + 1

    def per_user_known_budget(self) -> int:
        """Known pairs contributed per user per query in the collaborative scheme."""
        return ceil((self.identifiable_count - 1) / self.user_count)

    def disclosed_known_count(self, mode: str) -> int:
        """The single integer sent to the server: it fixes the code dimension only."""
        if mode == "single":
            return self.identifiable_count - 1
        if mode == "multi":
            return self.per_user_known_budget()
        raise ValueError(f"unknown mode {mode!r}")

    def code_length(self, mode: str) -> int:
        return 2 * self.class_count - self.disclosed_known_count(mode)


@dataclass(frozen=True)
class RuleResult:
    name: str
    passed: bool
    detail: str = ""
    witnesses: tuple = ()


@dataclass(frozen=True)
class ValidationReport:
    mode: str
    rules: tuple[RuleResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.rules)

    def failed(self) -> tuple[RuleResult, ...]:
        return tuple(r for r in self.rules if not r.passed)


def validate_scenario(s: Scenario, mode: str) -> ValidationReport:
    """Check every assumption the protocol's guarantees rest on; pure function.

    Failures are report entries, never exceptions.  The identifiable-depth
    check is non-strict (count >= max unidentified count, and >= 1): with the
    designated query built first that is sufficient for the generator, and the
    worked scenarios in the bundled fixtures sit exactly on this boundary.
    """
    if mode not in ("single", "multi"):
        raise ValueError(f"unknown mode {mode!r}")
    rules = []
    eta = s.identifiable_count
    gamma = s.class_count
    kun = s.max_unidentified_count()
    sizes = s.class_map.sizes

    if mode == "single":
        rules.append(
            RuleResult(
                "single_user_count",
                s.user_count == 1,
                f"single mode needs exactly 1 user, scenario has {s.user_count}",
            )
        )
        users = s.users[:1]
        share = ceil((kun + 1) / eta)
        headroom_name = "class_headroom"
        headroom_need = share
    else:
        rules.append(RuleResult("user_count", s.user_count >= 1, "need at least 1 user"))
        users = s.users
        rules.append(
            RuleResult(
                "query_budget",
                kun + 1 >= s.user_count,
                f"plan has {kun + 1} queries for {s.user_count} users",
            )
        )
        headroom_name = "identifiable_headroom"
        headroom_need = ceil((kun + 1) / s.user_count)

    # Collaborative helper blocks may hit the same user-class pair in every
    # query, so the multi-user depth bound is strict.  The single-user scheme
    # draws known indices from class i only in the queries the fresh-index
    # rotation does not assign to it, so classes the rotation reaches get a
    # non-strict bound; classes it never reaches (more identifiable classes
    # than queries) still need the strict one.
    def depth_floor(i: int) -> int:
        if mode == "multi":
            return kun + 1
        reached = kun + 1 >= eta or i <= kun + 1
        return max(kun, 1) if reached else kun + 1

    bad = [
        (u, i)
        for u, si in enumerate(users, start=1)
        for i in range(1, eta + 1)
        if si.count(i) < depth_floor(i)
    ]
    rules.append(
        RuleResult(
            "identifiable_depth",
            not bad,
            "identifiable classes need side information at least as deep as the "
            "largest unidentifiable count (strictly deeper when out of the rotation "
            "or in multi mode)",
            tuple(bad),
        )
    )

    if mode == "single":
        bad = [
            (u, i)
            for u, si in enumerate(users, start=1)
            for i in range(1, gamma + 1)
            if sizes[i - 1] - si.count(i) < headroom_need
        ]
    else:
        bad = [
            (u, i)
            for u, si in enumerate(users, start=1)
            for i in range(1, eta + 1)
            if sizes[i - 1] - si.count(i) < headroom_need
        ]
    rules.append(
        RuleResult(
            headroom_name,
            not bad,
            f"each listed class needs at least {headroom_need} messages outside the side information",
            tuple(bad),
        )
    )

    small = tuple(i for i in range(1, gamma + 1) if sizes[i - 1] < kun + 1)
    rules.append(
        RuleResult(
            "subclass_pool",
            not small,
            f"every class needs at least {kun + 1} messages so no subclass index repeats",
            small,
        )
    )

    need_q = s.code_length(mode)
    rules.append(
        RuleResult(
            "field_supports_code",
            s.store.field.order >= need_q,
            f"code length {need_q} needs field order >= {need_q}, have {s.store.field.order}",
        )
    )
    return ValidationReport(mode, tuple(rules))


def random_symbol(seed: int, message_index: int, symbol_index: int, order: int) -> int:
    """Deterministic pseudo-random symbol for 'random' message descriptors.

    Defined as the first 8 bytes of BLAKE2b("<seed>/<message>/<symbol>")
    reduced mod the field order, so stores rebuild identically everywhere.
    """
    digest = hashlib.blake2b(
        f"{seed}/{message_index}/{symbol_index}".encode(), digest_size=8
    ).digest()
    return int.from_bytes(digest, "big") % order


def random_store(field: PrimeField, class_sizes, symbols_per_message: int, seed: int) -> MessageStore:
    """Store with every symbol drawn by random_symbol; classes are filled in listing order."""
    total = sum(class_sizes)
    rows = tuple(
        tuple(random_symbol(seed, f, ell, field.order) for ell in range(1, symbols_per_message + 1))
        for f in range(1, total + 1)
    )
    return MessageStore(field, rows)


def sequential_class_map(class_sizes) -> ClassMap:
    """Class map whose global indices run 1..F in listing order."""
    classes = []
    nxt = 1
    for size in class_sizes:
        classes.append(tuple(range(nxt, nxt + size)))
        nxt += size
    return ClassMap(classes)
