"""The cyclic group generated by a permutation with given cycle lengths.

Group elements are the powers ``g**k`` for ``k`` in ``range(d)``; everything
here works on the exponent ``k`` and never builds explicit permutations.
Cycles are addressed by 1-based position in the normalized length tuple, so
repeated lengths such as ``(2, 2, 3)`` are fine.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .arith import gcd_set, lcm_set
from .errors import InvalidInputError, ResourceLimitError

SIEVE_MAX_CYCLES = 4


@dataclass(frozen=True)
class CycleType:
    """Cycle lengths of the generator, with fixed points dropped.

    ``original`` keeps the lengths exactly as given, for display. When every
    input length is 1 the group is trivial and ``lengths`` is empty.
    """

    lengths: tuple[int, ...]
    original: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        original = tuple(self.original) or tuple(self.lengths)
        if not original:
            raise InvalidInputError("a cycle type needs at least one length")
        for x in original:
            if not isinstance(x, int) or x < 1:
                raise InvalidInputError(f"cycle lengths must be integers >= 1, got {x!r}")
        object.__setattr__(self, "original", original)
        object.__setattr__(self, "lengths", tuple(x for x in self.lengths if x > 1))

    @classmethod
    def of(cls, *lengths: int) -> "CycleType":
        if len(lengths) == 1 and not isinstance(lengths[0], int):
            lengths = tuple(lengths[0])
        return cls(tuple(lengths))

    @property
    def t(self) -> int:
        return len(self.lengths)

    @property
    def order(self) -> int:
        return lcm_set(self.lengths)

    d = order

    @property
    def n_points(self) -> int:
        return sum(self.lengths)

    def __str__(self):
        return ",".join(map(str, self.lengths)) or "1"


def _check_k(ct: CycleType, k: int) -> None:
    if not 0 <= k < ct.d:
        raise InvalidInputError(f"exponent {k} outside [0, {ct.d})")


def _check_index_set(ct: CycleType, I: Iterable[int]) -> tuple[int, ...]:
    I = tuple(sorted(set(I)))
    if not I or len(I) >= ct.t or I[0] < 1 or I[-1] > ct.t:
        raise InvalidInputError(f"{set(I)} is not a proper nonempty subset of [1..{ct.t}]")
    return I


def proper_index_sets(t: int) -> list[tuple[int, ...]]:
    """All proper nonempty subsets of ``[1..t]`` in lexicographic order."""
    subsets = [c for r in range(1, t) for c in combinations(range(1, t + 1), r)]
    subsets.sort()
    return subsets


def complement_pairs(t: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Unordered splits ``{I, I^c}`` of ``[1..t]``; ``I`` is the side containing 1."""
    full = set(range(1, t + 1))
    pairs = []
    for I in proper_index_sets(t):
        if 1 in I:
            pairs.append((I, tuple(sorted(full - set(I)))))
    return pairs


def power_cycle_lengths(ct: CycleType, k: int) -> tuple[Counter, int]:
    """Cycle structure of ``g**k``.

    Returns ``(cycles, fixed)`` where ``cycles`` maps each nontrivial cycle
    length to its multiplicity and ``fixed`` counts fixed points.
    """
    _check_k(ct, k)
    cycles: Counter = Counter()
    fixed = 0
    for ell in ct.lengths:
        g = math.gcd(ell, k)
        if ell // g == 1:
            fixed += ell
        else:
            cycles[ell // g] += g
    return cycles, fixed


def d_I(ct: CycleType, I: Iterable[int]) -> int:
    I = _check_index_set(ct, I)
    return lcm_set(ct.lengths[i - 1] for i in I)


def _lcm_of(ct: CycleType, I: Sequence[int]) -> int:
    return lcm_set(ct.lengths[i - 1] for i in I)


def decomposition_witness(ct: CycleType, k: int) -> tuple[int, ...] | None:
    """Lexicographically smallest index set witnessing that ``g**k`` splits.

    ``None`` when ``g**k`` is indecomposable.
    """
    _check_k(ct, k)
    if k == 0:
        raise InvalidInputError("the identity is neither decomposable nor indecomposable")
    full = range(1, ct.t + 1)
    for I in proper_index_sets(ct.t):
        Ic = [i for i in full if i not in I]
        dI, dIc = _lcm_of(ct, I), _lcm_of(ct, Ic)
        if k % math.gcd(dI, dIc) == 0 and k % dI and k % dIc:
            return I
    return None


def is_decomposable(ct: CycleType, k: int) -> bool:
    return decomposition_witness(ct, k) is not None


def is_decomposable_intrinsic(cycle_lengths: Iterable[int] | Counter) -> bool:
    """Decide decomposability from the nontrivial cycle lengths of the element alone.

    The element splits exactly when its cycles fall into two nonempty groups
    with every cross pair of lengths coprime, i.e. when the "shares a factor"
    graph on its cycles is disconnected. The identity (no cycles) counts as
    not decomposable.
    """
    if isinstance(cycle_lengths, Counter):
        lengths = list(cycle_lengths.elements())
    else:
        lengths = list(cycle_lengths)
    if any(x < 2 for x in lengths):
        raise InvalidInputError("only nontrivial cycle lengths (>= 2) are allowed")
    if len(lengths) < 2:
        return False
    parent = list(range(len(lengths)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in combinations(range(len(lengths)), 2):
        if math.gcd(lengths[i], lengths[j]) > 1:
            parent[find(i)] = find(j)
    return len({find(i) for i in range(len(lengths))}) > 1


def subelement_indices(ct: CycleType, k: int) -> tuple[int, ...]:
    """Exponents ``m`` such that ``g**m`` is a product of some cycles of ``g**k``.

    On each orbit a power of ``g`` is a rotation, so it either agrees with
    ``g**k`` on the whole orbit or fixes it: ``m = 0`` or ``m = k`` modulo
    every cycle length.
    """
    _check_k(ct, k)
    return tuple(
        m for m in range(ct.d)
        if all(m % ell == 0 or (m - k) % ell == 0 for ell in ct.lengths)
    )


def vertex_degree(ct: CycleType) -> int:
    """Number of indecomposable non-identity elements (= degree of every vertex)."""
    return sum(1 for k in range(1, ct.d) if not is_decomposable(ct, k))


def vertex_degree_sieve(ct: CycleType, max_cycles: int = SIEVE_MAX_CYCLES) -> int:
    """Vertex degree from the closed inclusion-exclusion formula.

    Runs over subsets ``T <= N <= M`` of the complement pairs ``{I, I^c}``;
    there are ``4**s`` terms with ``s = 2**(t-1) - 1``, hence the cap on ``t``.
    """
    if ct.t > max_cycles:
        raise ResourceLimitError(
            f"degree sieve is limited to t <= {max_cycles} cycles (got t = {ct.t})",
            {"t": ct.t, "limit": max_cycles},
        )
    d = ct.d
    pairs = complement_pairs(ct.t)
    dI = [_lcm_of(ct, I) for I, _ in pairs]
    dIc = [_lcm_of(ct, Ic) for _, Ic in pairs]
    gcds = [math.gcd(x, y) for x, y in zip(dI, dIc)]
    s = len(pairs)
    total = 0
    for M in range(1 << s):
        y = lcm_set(gcds[m] for m in range(s) if M >> m & 1)
        N = M
        while True:
            T = N
            while True:
                z = lcm_set(
                    dI[n] if T >> n & 1 else dIc[n] for n in range(s) if N >> n & 1
                )
                sign = -1 if (M.bit_count() + N.bit_count()) % 2 else 1
                total += sign * (d // math.lcm(y, z) - 1)
                if T == 0:
                    break
                T = (T - 1) & N
            if N == 0:
                break
            N = (N - 1) & M
    return total


def graph_is_complete(ct: CycleType) -> bool:
    """Whether every pair of vertices spans an edge."""
    d = ct.d
    full = range(1, ct.t + 1)
    for I in proper_index_sets(ct.t):
        Ic = [i for i in full if i not in I]
        if _lcm_of(ct, I) != d and _lcm_of(ct, Ic) != d:
            return False
    return True
