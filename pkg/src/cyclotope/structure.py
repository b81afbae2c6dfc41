"""Dimension formulas and a coarse structural classification of P(G)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .arith import gcd_set
from .errors import ResourceLimitError
from .group import CycleType

INCLUSION_EXCLUSION_MAX_CYCLES = 20

SIMPLEX = "simplex"
PRODUCT_OF_SIMPLICES = "product_of_simplices"
JOIN_OF_TWO_ORBIT = "join_of_two_orbit"
GENERAL = "general"


def dimension_divisibility(ct: CycleType) -> int:
    """Count ``k`` in ``[1, d-1]`` divisible by ``d / l_i`` for some ``i``."""
    d = ct.d
    steps = {d // ell for ell in ct.lengths}
    hits = set()
    for s in steps:
        hits.update(range(s, d, s))
    return len(hits)


def dimension_roots_of_unity(ct: CycleType) -> int:
    """Count distinct nontrivial ``l_i``-th roots of unity, as reduced fractions."""
    roots = {Fraction(j, ell) for ell in ct.lengths for j in range(1, ell)}
    return len(roots)


def dimension_inclusion_exclusion(ct: CycleType) -> int:
    t = ct.t
    if t > INCLUSION_EXCLUSION_MAX_CYCLES:
        raise ResourceLimitError(
            f"inclusion-exclusion runs over 2**t subsets; t = {t} exceeds "
            f"{INCLUSION_EXCLUSION_MAX_CYCLES}",
            {"t": t, "limit": INCLUSION_EXCLUSION_MAX_CYCLES},
        )
    total = -1
    for r in range(1, t + 1):
        sign = 1 if r % 2 else -1
        for I in combinations(ct.lengths, r):
            total += sign * gcd_set(I)
    return total


dimension = dimension_divisibility


@dataclass(frozen=True)
class StructureReport:
    """What is known about P(G) in closed form.

    ``classification`` is the strongest label with precedence
    simplex > product_of_simplices > join_of_two_orbit > general; ``flags``
    records every label that applies. ``vertex_count``/``facet_count`` are
    ``None`` when no closed form is available.
    """

    cycle_type: CycleType
    dim: int
    q_join_multiplicity: int
    reduced_type: CycleType
    classification: str
    flags: dict = field(default_factory=dict)
    vertex_count: int | None = None
    facet_count: int | None = None
    join_factors: tuple[int, int] | None = None

    def as_dict(self) -> dict:
        return {
            "cycle_type": list(self.cycle_type.lengths),
            "dim": self.dim,
            "q_join_multiplicity": self.q_join_multiplicity,
            "reduced_type": list(self.reduced_type.original),
            "classification": self.classification,
            "flags": dict(self.flags),
            "vertex_count": self.vertex_count,
            "facet_count": self.facet_count,
            "join_factors": list(self.join_factors) if self.join_factors else None,
        }


def _simplex_facets(d: int) -> int:
    # a point has no proper nonempty faces
    return d if d >= 2 else 0


def classify(ct: CycleType) -> StructureReport:
    d = ct.d
    lengths = ct.lengths
    q = gcd_set(lengths) or 1
    reduced = CycleType(tuple(ell // q for ell in lengths) or (1,))
    flags = {
        SIMPLEX: d in lengths or not lengths,
        PRODUCT_OF_SIMPLICES: all(math.gcd(x, y) == 1 for x, y in combinations(lengths, 2)),
        JOIN_OF_TWO_ORBIT: ct.t == 2,
    }
    dim = dimension_divisibility(ct)
    vertex_count = facet_count = None
    factors = None
    if flags[SIMPLEX]:
        label = SIMPLEX
        vertex_count, facet_count = d, _simplex_facets(d)
    elif flags[PRODUCT_OF_SIMPLICES]:
        label = PRODUCT_OF_SIMPLICES
        vertex_count, facet_count = math.prod(lengths), sum(lengths)
    elif flags[JOIN_OF_TWO_ORBIT]:
        label = JOIN_OF_TWO_ORBIT
        l1, l2 = lengths
        factors = (l1 // q - 1, l2 // q - 1)
        vertex_count, facet_count = math.lcm(l1, l2), l1 + l2
    else:
        label = GENERAL
    if ct.t == 2 and factors is None:
        factors = (lengths[0] // q - 1, lengths[1] // q - 1)
    return StructureReport(
        cycle_type=ct,
        dim=dim,
        q_join_multiplicity=q,
        reduced_type=reduced,
        classification=label,
        flags=flags,
        vertex_count=vertex_count,
        facet_count=facet_count,
        join_factors=factors,
    )
