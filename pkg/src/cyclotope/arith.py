"""Integer helpers: gcd/lcm over sets and Chinese-remainder indexing.

Conventions: ``gcd`` of the empty set is 0, ``lcm`` of the empty set is 1.
Everything is plain Python ``int`` so nothing overflows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

from .errors import InvalidInputError


def gcd_set(values: Iterable[int]) -> int:
    return reduce(math.gcd, values, 0)


def lcm_set(values: Iterable[int]) -> int:
    result = 1
    for v in values:
        if v <= 0:
            raise InvalidInputError(f"lcm_set needs positive integers, got {v}")
        result = result * v // math.gcd(result, v)
    return result


def check_pairwise_coprime(moduli: Sequence[int]) -> None:
    for i, m in enumerate(moduli):
        if m <= 0:
            raise InvalidInputError(f"modulus must be positive, got {m}")
        for m2 in moduli[i + 1:]:
            if math.gcd(m, m2) != 1:
                raise InvalidInputError(f"moduli {m} and {m2} are not coprime")


@dataclass(frozen=True)
class CrtIndex:
    """Residues of an integer modulo an ordered tuple of coprime moduli.

    The moduli keep the caller's order; ``[[ab]] = [[a]] x [[b]]`` style
    identifications rely on it.
    """

    moduli: tuple[int, ...]
    residues: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "moduli", tuple(self.moduli))
        object.__setattr__(self, "residues", tuple(self.residues))
        if len(self.moduli) != len(self.residues):
            raise InvalidInputError("moduli and residues differ in length")
        check_pairwise_coprime(self.moduli)
        for r, m in zip(self.residues, self.moduli):
            if not 0 <= r < m:
                raise InvalidInputError(f"residue {r} outside [0, {m})")


def crt_decode(k: int, moduli: Sequence[int]) -> CrtIndex:
    moduli = tuple(moduli)
    check_pairwise_coprime(moduli)
    if not 0 <= k < math.prod(moduli):
        raise InvalidInputError(f"{k} is outside [0, {math.prod(moduli)})")
    return CrtIndex(moduli, tuple(k % m for m in moduli))


def crt_encode(index: CrtIndex) -> int:
    """Inverse of :func:`crt_decode`."""
    total = math.prod(index.moduli)
    k = 0
    for r, m in zip(index.residues, index.moduli):
        rest = total // m
        k += r * rest * pow(rest, -1, m)
    return k % total


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """Shortcut for two coprime moduli: the k in [[m1*m2]] with given residues."""
    return crt_encode(CrtIndex((m1, m2), (r1, r2)))
