"""Systematic [n, k] MDS codes over GF(q): construction, encoding, erasure decoding.

The default construction is a systematic Reed-Solomon code on the evaluation
points 0, 1, ..., n-1: row i of the generator is the degree-(k-1) Lagrange
basis polynomial through the i-th systematic point, evaluated at all n points.
This is MDS for every n <= q.  Erasure decoding recovers the message from any
k codeword positions by inverting the corresponding column submatrix; no error
correction is attempted.

Codeword positions, like every index in this package, are 1-based.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .errors import (
    BadDimensions,
    FieldTooSmall,
    LengthMismatch,
    NotMDS,
    NotSystematic,
    SingularSubmatrix,
)
from .field import PrimeField

# Explicit generators whose C(n, k) exceeds this bound are spot-checked on
# MDS_SAMPLE_COUNT random column subsets instead of exhaustively.
EXHAUSTIVE_MINOR_LIMIT = 100_000
MDS_SAMPLE_COUNT = 2_000

# Exhaustive minor check on construction is cheap up to this length.
BUILD_CHECK_MAX_N = 12


@dataclass(frozen=True)
class Generator:
    """Systematic k x n generator matrix; immutable and hashable."""

    field: PrimeField
    rows: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def column(self, pos: int) -> tuple[int, ...]:
        """Column at 1-based position pos."""
        return tuple(row[pos - 1] for row in self.rows)


@lru_cache(maxsize=1024)
def build_systematic_generator(n: int, k: int, field: PrimeField) -> Generator:
    """Deterministic systematic Reed-Solomon generator for given (n, k, q); cached."""
    if k < 1 or k >= n:
        raise BadDimensions(f"need 1 <= k < n, got k={k}, n={n}")
    if n > field.order:
        raise FieldTooSmall(f"length {n} exceeds field order {field.order}")
    q = field.order
    rows = []
    for i in range(k):
        # denom = prod_{j != i, j < k} (i - j)
        denom = 1
        for j in range(k):
            if j != i:
                denom = denom * (i - j) % q
        inv_denom = field.inv(denom)
        row = []
        for x in range(n):
            num = 1
            for j in range(k):
                if j != i:
                    num = num * (x - j) % q
            row.append(num * inv_denom % q)
        rows.append(tuple(row))
    gen = Generator(field, tuple(rows))
    if n <= BUILD_CHECK_MAX_N and not verify_mds(gen):
        raise NotMDS("constructed generator failed the minor check")  # unreachable for RS
    return gen


def generator_from_explicit(rows, field: PrimeField) -> Generator:
    """Validate and wrap an explicit generator matrix.

    The matrix must be in systematic form and MDS.  The MDS property is checked
    exhaustively when C(n, k) <= EXHAUSTIVE_MINOR_LIMIT, otherwise on
    MDS_SAMPLE_COUNT seeded random column subsets.
    """
    k = len(rows)
    if k == 0:
        raise BadDimensions("empty matrix")
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise BadDimensions("ragged rows")
    if not 1 <= k < n:
        raise BadDimensions(f"need 1 <= k < n, got k={k}, n={n}")
    q = field.order
    for r in rows:
        for v in r:
            if not isinstance(v, int) or not 0 <= v < q:
                raise BadDimensions(f"entry {v!r} outside [0, {q})")
    for i in range(k):
        for j in range(k):
            expect = 1 if i == j else 0
            if rows[i][j] != expect:
                raise NotSystematic(f"column block [1..{k}] is not the identity at ({i + 1},{j + 1})")
    gen = Generator(field, tuple(tuple(r) for r in rows))
    bad = _find_singular_subset(gen)
    if bad is not None:
        raise NotMDS(f"singular column set {bad}")
    return gen


def verify_mds(gen: Generator) -> bool:
    """True iff every k-column submatrix is invertible (sampled for huge n-choose-k)."""
    return _find_singular_subset(gen) is None


def _find_singular_subset(gen: Generator):
    n, k = gen.n, gen.k
    if comb(n, k) <= EXHAUSTIVE_MINOR_LIMIT:
        subsets = itertools.combinations(range(1, n + 1), k)
    else:
        rng = random.Random(0xC0DE)
        subsets = (tuple(sorted(rng.sample(range(1, n + 1), k))) for _ in range(MDS_SAMPLE_COUNT))
    for cols in subsets:
        if not _invertible(gen, cols):
            return cols
    return None


def _invertible(gen: Generator, cols) -> bool:
    try:
        _column_inverse(gen, tuple(cols))
        return True
    except SingularSubmatrix:
        return False


def encode(gen: Generator, message) -> tuple[int, ...]:
    """Codeword message x G; the first k symbols equal the message."""
    if len(message) != gen.k:
        raise LengthMismatch(f"message length {len(message)} != k={gen.k}")
    q = gen.field.order
    out = []
    for col in range(gen.n):
        acc = 0
        for i, m in enumerate(message):
            acc += m * gen.rows[i][col]
        out.append(acc % q)
    return tuple(out)


def decode_from_positions(gen: Generator, positions, values) -> tuple[int, ...]:
    """Recover the message from k known codeword coordinates.

    positions are 1-based codeword indices; values[i] is the symbol observed at
    positions[i].  Any k distinct positions of an MDS generator suffice.
    """
    pos = list(positions)
    if len(pos) != gen.k or len(set(pos)) != gen.k:
        raise LengthMismatch(f"need exactly k={gen.k} distinct positions, got {pos}")
    if len(values) != gen.k:
        raise LengthMismatch(f"need k={gen.k} values, got {len(values)}")
    for p in pos:
        if not 1 <= p <= gen.n:
            raise LengthMismatch(f"position {p} outside [1, {gen.n}]")
    pairs = sorted(zip(pos, values))
    cols = tuple(p for p, _ in pairs)
    vals = [v for _, v in pairs]
    inv = _column_inverse(gen, cols)
    q = gen.field.order
    # message = vals x inv(G[:, cols])
    return tuple(sum(vals[r] * inv[r][c] for r in range(gen.k)) % q for c in range(gen.k))


@lru_cache(maxsize=65536)
def _column_inverse(gen: Generator, cols: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Inverse of the k x k submatrix formed by the given 1-based columns."""
    k = gen.k
    q = gen.field.order
    a = [[gen.rows[r][c - 1] for c in cols] for r in range(k)]
    inv = [[1 if r == c else 0 for c in range(k)] for r in range(k)]
    for col in range(k):
        pivot = next((r for r in range(col, k) if a[r][col] != 0), None)
        if pivot is None:
            raise SingularSubmatrix(f"columns {cols} are linearly dependent")
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
        scale = pow(a[col][col], -1, q)
        a[col] = [v * scale % q for v in a[col]]
        inv[col] = [v * scale % q for v in inv[col]]
        for r in range(k):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [(v - factor * w) % q for v, w in zip(a[r], a[col])]
                inv[r] = [(v - factor * w) % q for v, w in zip(inv[r], inv[col])]
    return tuple(tuple(row) for row in inv)
