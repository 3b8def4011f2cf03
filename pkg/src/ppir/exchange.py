"""The protocol round: blind server encoding, client erasure decoding, session bookkeeping.

For every query the server lines up the queried messages in ascending class
order, encodes each symbol position with the session's systematic MDS code,
and returns only the parity symbols.  Its inputs are limited by signature to
the store, the bare query pairs, the disclosed code-dimension hint, and the
generator: neither demands nor side information can flow in.

A client combines the parities with the side-information messages it can
actually place (identifiable classes only: holding a message from an
unidentifiable class does not reveal which queried pair it answers) and
erasure-decodes the full message vector whenever enough coordinates are known.
Queries that fall short are skipped, which is the expected outcome for
non-designated queries when the desired class is identifiable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DimensionMismatch, InsufficientKnowns, RecoveryFailed
from .mds import Generator, build_systematic_generator, decode_from_positions, encode
from .queries import QueryPlan, Query, generate_multi_user_plan, generate_single_user_plan
from .scenario import ClassMap, MessageStore, Scenario, SideInformation


@dataclass(frozen=True)
class Answer:
    """Parity rows for one query: (code length - class count) rows, one column per symbol position."""

    query_index: int
    parities: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class UserResult:
    user: int
    desired_class: int
    decoded_queries: tuple[int, ...]
    decoded: tuple[tuple[int, int, int], ...]          # (class, subclass, global) over all decodable queries
    new_messages: tuple[tuple[int, int, int], ...]     # decoded desired-class messages outside the side information
    witness_symbols: tuple[int, ...]                   # contents of the first new message


@dataclass(frozen=True)
class SessionTrace:
    mode: str
    demands: tuple[int, ...]
    seed: int
    plan_view: tuple[int, tuple[tuple[tuple[int, int], ...], ...]]
    code_length: int
    code_dimension: int
    field_order: int
    answers: tuple[Answer, ...]
    users: tuple[UserResult, ...]
    downloaded_symbols: int
    rate: Fraction


def answer_query(
    store: MessageStore,
    class_map: ClassMap,
    query: Query,
    disclosed_known_count: int,
    generator: Generator,
) -> Answer:
    """Parity symbols for one query; reads nothing beyond its arguments."""
    gamma = class_map.class_count
    if generator.k != gamma or generator.n != 2 * gamma - disclosed_known_count:
        raise DimensionMismatch(
            f"generator is [{generator.n}, {generator.k}], query needs "
            f"[{2 * gamma - disclosed_known_count}, {gamma}]"
        )
    if len(query.pairs) != gamma:
        raise DimensionMismatch(f"query has {len(query.pairs)} pairs, expected {gamma}")
    rows = [store.symbols(class_map.pair_to_global(i, beta)) for i, beta in query.pairs]
    length = store.symbols_per_message
    parity_cols = []
    for ell in range(length):
        codeword = encode(generator, [r[ell] for r in rows])
        parity_cols.append(codeword[gamma:])
    parities = tuple(
        tuple(parity_cols[ell][p] for ell in range(length))
        for p in range(generator.n - gamma)
    )
    return Answer(query.index, parities)


def decode_answer(
    query: Query,
    answer: Answer,
    side_info: SideInformation,
    si_contents: dict,
    class_map: ClassMap,
    generator: Generator,
) -> dict:
    """All queried messages, recovered from known coordinates plus parities.

    ``si_contents`` maps global message indices the user holds to their
    symbols.  Returns {(class, subclass): symbols} for every queried pair.
    Raises InsufficientKnowns when known systematic positions plus parity rows
    fall short of the code dimension.
    """
    gamma = generator.k
    known_positions = []
    known_globals = {}
    for i, beta in query.pairs:
        if i <= side_info.identifiable_count and beta in side_info.known_indices(i):
            f = class_map.pair_to_global(i, beta)
            if f in si_contents:
                known_positions.append(i)
                known_globals[i] = si_contents[f]
    parity_count = generator.n - gamma
    if len(known_positions) + parity_count < gamma:
        raise InsufficientKnowns(
            f"{len(known_positions)} known positions + {parity_count} parities < {gamma}"
        )
    positions = known_positions[:gamma]
    positions += list(range(gamma + 1, gamma + 1 + (gamma - len(positions))))
    length = len(answer.parities[0]) if answer.parities else len(next(iter(si_contents.values())))
    out_symbols = []
    for ell in range(length):
        values = [
            known_globals[p][ell] if p <= gamma else answer.parities[p - gamma - 1][ell]
            for p in positions
        ]
        out_symbols.append(decode_from_positions(generator, positions, values))
    return {
        (i, beta): tuple(out_symbols[ell][idx] for ell in range(length))
        for idx, (i, beta) in enumerate(query.pairs)
    }


def session_generator(s: Scenario, mode: str, explicit: Optional[Generator] = None) -> Generator:
    """The session's code: a supplied explicit generator when its shape fits, else the default construction."""
    gamma = s.class_count
    n = s.code_length(mode)
    if explicit is not None and explicit.k == gamma and explicit.n == n:
        return explicit
    return build_systematic_generator(n, gamma, s.store.field)


def run_session(
    s: Scenario,
    demands,
    *,
    seed: Optional[int] = None,
    explicit_generator: Optional[Generator] = None,
    force: bool = False,
) -> SessionTrace:
    """Full protocol round: plan, answers, every user's decodes, rate accounting.

    ``demands`` is a single class index (one user) or one index per user
    (collaborative).  Every user receives every answer over the shared link
    and decodes what it can; sessions are stateless, so decoded messages are
    not folded back into side information.
    """
    if isinstance(demands, int):
        mode = "single"
        demand_tuple = (demands,)
        plan = generate_single_user_plan(s, demands, seed=seed, force=force)
    else:
        mode = "multi"
        demand_tuple = tuple(demands)
        plan = generate_multi_user_plan(s, demand_tuple, seed=seed, force=force)

    gen = session_generator(s, mode, explicit_generator)
    answers = tuple(
        answer_query(s.store, s.class_map, q, plan.disclosed_known_count, gen)
        for q in plan.queries
    )

    users = []
    for u, si in enumerate(s.users, start=1):
        contents = {
            s.class_map.pair_to_global(i, beta): s.store.symbols(s.class_map.pair_to_global(i, beta))
            for i in range(1, s.class_count + 1)
            for beta in si.oracle_indices(i)
        }
        desired = demand_tuple[u - 1] if mode == "multi" else demand_tuple[0]
        held = {
            s.class_map.pair_to_global(i, beta)
            for i in range(1, s.class_count + 1)
            for beta in si.oracle_indices(i)
        }
        decoded_queries = []
        decoded = []
        new = []
        witness = ()
        for q, a in zip(plan.queries, answers):
            try:
                messages = decode_answer(q, a, si, contents, s.class_map, gen)
            except InsufficientKnowns:
                continue
            decoded_queries.append(q.index)
            for (i, beta), symbols in sorted(messages.items()):
                f = s.class_map.pair_to_global(i, beta)
                decoded.append((i, beta, f))
                if i == desired and f not in held:
                    if not new:
                        witness = symbols
                    new.append((i, beta, f))
        if not new:
            raise RecoveryFailed(
                f"user {u} decoded no new message from class {desired}"
            )
        users.append(
            UserResult(
                user=u,
                desired_class=desired,
                decoded_queries=tuple(decoded_queries),
                decoded=tuple(decoded),
                new_messages=tuple(new),
                witness_symbols=witness,
            )
        )

    length = s.store.symbols_per_message
    downloaded = sum(len(a.parities) * length for a in answers)
    return SessionTrace(
        mode=mode,
        demands=demand_tuple,
        seed=s.seed if seed is None else seed,
        plan_view=plan.server_view(),
        code_length=gen.n,
        code_dimension=gen.k,
        field_order=s.store.field.order,
        answers=answers,
        users=tuple(users),
        downloaded_symbols=downloaded,
        rate=Fraction(length, downloaded),
    )
