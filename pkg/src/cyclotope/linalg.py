"""Exact linear algebra over the rationals.

Rows are plain lists. ``rank_int`` works on integer rows without fractions
(cross-multiplication plus gcd normalisation), which keeps 0/1 inputs fast.
``rref`` uses :class:`fractions.Fraction` and the pivot rule "first nonzero
column, smallest row index".
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Sequence

import numpy as np

# Prime used for the modular rank lower bound; p**2 fits in int64.
MOD_PRIME = 2_147_483_647


def _normalize(row: list[int]) -> list[int]:
    g = reduce(math.gcd, row, 0)
    if g > 1:
        return [x // g for x in row]
    return row


def reduce_against(basis: list[tuple[int, list[int]]], row: list[int]) -> list[int]:
    """Eliminate the pivot entries of ``basis`` (in insertion order) from ``row``."""
    for col, b in basis:
        x = row[col]
        if x:
            p = b[col]
            row = _normalize([p * r - x * s for r, s in zip(row, b)])
    return row


class IncrementalRank:
    """Integer echelon basis that grows one row at a time."""

    def __init__(self):
        self.basis: list[tuple[int, list[int]]] = []

    @property
    def rank(self) -> int:
        return len(self.basis)

    def add(self, row: Sequence[int]) -> bool:
        """Add ``row``; return True if it increased the rank."""
        r = reduce_against(self.basis, list(row))
        for col, x in enumerate(r):
            if x:
                self.basis.append((col, r))
                return True
        return False


def rank_int(rows: Sequence[Sequence[int]]) -> int:
    acc = IncrementalRank()
    for row in rows:
        acc.add(row)
    return acc.rank


def rank_mod_p(rows: Sequence[Sequence[int]], p: int = MOD_PRIME) -> int:
    """Rank of an integer matrix modulo ``p``.

    This never exceeds the rational rank, so it is an exact lower bound.
    """
    if len(rows) == 0:
        return 0
    A = np.array(rows, dtype=np.int64) % p
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        below = np.nonzero(A[r + 1:, c])[0] + r + 1
        if below.size:
            f = A[below, c].reshape(-1, 1)
            A[below] = (A[below] - (f * A[r]) % p) % p
        r += 1
    return r


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns; zero rows are dropped."""
    M = [[Fraction(x) for x in row] for row in rows]
    if not M:
        return [], []
    n = len(M[0])
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{x : rows @ x = 0}``; one vector per non-pivot column."""
    R, pivots = rref(rows)
    if ncols is None:
        ncols = len(rows[0])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def to_primitive_ints(vec: Sequence) -> list[int]:
    """Scale a rational vector by a positive factor to coprime integers."""
    fr = [Fraction(x) for x in vec]
    den = reduce(math.lcm, (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = reduce(math.gcd, ints, 0)
    return [x // g for x in ints] if g > 1 else ints


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))
