"""Vertices of P(G) as 0/1 vectors, one block per cycle.

Block ``i`` holds the first row of the ``i``-th diagonal block of the
permutation matrix, so ``g**k`` has its single 1 at offset ``k mod l_i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import check_pairwise_coprime
from .errors import InvalidInputError
from .group import CycleType
from .linalg import IncrementalRank


def vertex_vector(ct: CycleType, k: int) -> tuple[int, ...]:
    coords: list[int] = []
    for ell in ct.lengths:
        block = [0] * ell
        block[k % ell] = 1
        coords.extend(block)
    return tuple(coords)


def all_vertices(ct: CycleType) -> list[tuple[int, ...]]:
    """Vertex vectors for ``k = 0, ..., d-1`` in that order."""
    return [vertex_vector(ct, k) for k in range(ct.d)]


def block_offsets(ct: CycleType) -> list[int]:
    offsets, pos = [], 0
    for ell in ct.lengths:
        offsets.append(pos)
        pos += ell
    return offsets


def affine_rank(points: Sequence[Sequence[int]]) -> int:
    """Dimension of the affine hull of integer points, computed exactly."""
    if len(points) == 0:
        raise InvalidInputError("affine_rank needs at least one point")
    base = points[0]
    acc = IncrementalRank()
    for p in points[1:]:
        acc.add([x - y for x, y in zip(p, base)])
    return acc.rank


@dataclass(frozen=True)
class AffineCombination:
    """Vertices ``g**k`` with rational weights summing to 1."""

    terms: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        if sum(c for _, c in self.terms) != 1:
            raise InvalidInputError("affine combination weights must sum to 1")

    def evaluate(self, ct: CycleType) -> tuple[Fraction, ...]:
        acc = [Fraction(0)] * ct.n_points
        for k, c in self.terms:
            for j, x in enumerate(vertex_vector(ct, k)):
                if x:
                    acc[j] += c
        return tuple(acc)


def barycenter_coefficient(a: int, b: int, c: int, k: int) -> int:
    """``abc`` times the weight of ``g**k`` in the barycenter combination.

    Only exponents divisible by at least one of a, b, c take part.
    """
    da, db, dc = k % a == 0, k % b == 0, k % c == 0
    table = {
        (True, False, False): a,
        (False, True, False): b,
        (False, False, True): c,
        (True, True, False): a + b - a * b,
        (True, False, True): a + c - a * c,
        (False, True, True): b + c - b * c,
        (True, True, True): a * b * c - a * b - a * c - b * c + a + b + c,
    }
    return table.get((da, db, dc), 0)


def verify_barycenter_combination(a: int, b: int, c: int, m: int) -> bool:
    """Check the barycenter identity used to show ``x_i >= 0`` is a facet.

    ``m`` is the vertex outside the face ``x_{m mod ab} >= 0`` and must satisfy
    ``m = 1 (mod ab)`` and ``m = 0 (mod c)``. The combination has to use only
    vertices of that face plus ``g**m``, have weights summing to 1 and
    reproduce the barycenter of all ``abc`` vertices.
    """
    for v in (a, b, c):
        if v < 2:
            raise InvalidInputError("a, b, c must be at least 2")
    check_pairwise_coprime((a, b, c))
    abc = a * b * c
    if not 0 <= m < abc or m % (a * b) != 1 % (a * b) or m % c != 0:
        raise InvalidInputError(f"m = {m} must satisfy m = 1 mod {a * b} and m = 0 mod {c}")
    ct = CycleType((a * b, a * c, b * c))
    coeffs = {k: barycenter_coefficient(a, b, c, k) for k in range(abc)}
    if sum(coeffs.values()) != abc:
        return False
    for k, w in coeffs.items():
        if w and k != m and k % (a * b) == m % (a * b):
            return False
    combo = AffineCombination(tuple((k, Fraction(w, abc)) for k, w in coeffs.items() if w))
    barycenter = [Fraction(0)] * ct.n_points
    for k in range(abc):
        for j, x in enumerate(vertex_vector(ct, k)):
            if x:
                barycenter[j] += Fraction(1, abc)
    return list(combo.evaluate(ct)) == barycenter
