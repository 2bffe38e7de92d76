"""Exact rank of integer matrices over the rationals.

A random ~62-bit prime is tried first: the rank mod p never exceeds the
rational rank, so a full modular rank is already a proof. Anything short of
full rank is recomputed exactly with fraction-free (Bareiss) elimination.
"""

from __future__ import annotations

import enum
import logging
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import gmpy2

log = logging.getLogger(__name__)

DEFAULT_PRIME_SEED = 20240229


class IntMatrix:
    """Dense matrix of Python integers, stored as a tuple of row tuples."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Iterable[Sequence[int]] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if data is None:
            data = [[0] * cols for _ in range(rows)]
        data = tuple(tuple(int(x) for x in row) for row in data)
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError(f"entries do not match shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self.data = data

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, [[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def transpose(self) -> IntMatrix:
        return IntMatrix(self.cols, self.rows, list(zip(*self.data)) if self.rows else
                         [[] for _ in range(self.cols)])

    @property
    def T(self) -> IntMatrix:
        return self.transpose()

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.data)) if other.rows else [()] * other.cols
        return IntMatrix(self.rows, other.cols,
                         [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.data])

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols}, {self.tolist()})"


def transpose(m: IntMatrix) -> IntMatrix:
    return m.transpose()


class RankMethod(enum.Enum):
    EXACT = "exact"
    MODULAR_CERTIFIED = "modular-certified"


@dataclass(frozen=True)
class RankResult:
    rank: int
    method: RankMethod

    def __int__(self):
        return self.rank


def random_prime(rng: random.Random, bits: int = 62) -> int:
    start = rng.getrandbits(bits) | (1 << (bits - 1))
    p = int(gmpy2.next_prime(start))
    # next_prime can spill over the bit budget right at the top of the range
    return p if p < (1 << bits) else int(gmpy2.prev_prime(1 << (bits - 1)))


def rank_mod_p(m: IntMatrix, p: int) -> int:
    """Rank of m over GF(p)."""
    if p < 2 or p >= 1 << 64 or not gmpy2.is_prime(p):
        raise ValueError(f"{p} is not a word-sized prime")
    a = [[x % p for x in row] for row in m.data]
    nrows, ncols = m.rows, m.cols
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        inv = pow(pr[c], -1, p)
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[c]
            if f:
                f = f * inv % p
                for j in range(c, ncols):
                    if pr[j]:
                        row[j] = (row[j] - f * pr[j]) % p
        r += 1
    return r


def bareiss_rank(m: IntMatrix) -> int:
    """Rational rank by fraction-free elimination.

    Every division is checked to be exact; a nonzero remainder raises
    ArithmeticError, since it would mean the elimination is broken.
    """
    a = [list(row) for row in m.data]
    nrows, ncols = m.rows, m.cols
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        p = pr[c]
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[c]
            for j in range(c + 1, ncols):
                q, rem = divmod(p * row[j] - f * pr[j], prev)
                if rem:
                    raise ArithmeticError("inexact Bareiss division")
                row[j] = q
            row[c] = 0
        prev = p
        r += 1
    return r


def rank(m: IntMatrix, seed: int | None = None) -> RankResult:
    """Exact rank over Q, certified mod p when the matrix has full rank."""
    full = min(m.rows, m.cols)
    if full == 0:
        return RankResult(0, RankMethod.EXACT)
    if seed is None:
        seed = DEFAULT_PRIME_SEED
    p = random_prime(random.Random(seed))
    if rank_mod_p(m, p) == full:
        return RankResult(full, RankMethod.MODULAR_CERTIFIED)
    log.debug("modular rank deficient for %dx%d (p=%d); running Bareiss", m.rows, m.cols, p)
    return RankResult(bareiss_rank(m), RankMethod.EXACT)
