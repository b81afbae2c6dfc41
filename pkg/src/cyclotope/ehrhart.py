"""Ehrhart series of one- and two-orbit cyclic permutation polytopes.

The closed forms come from the product-of-simplices h*-vector and the
multiplicativity of h*-numerators under Z-joins. A brute-force lattice point
counter over the facet description is kept as an independent check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from math import comb

from .errors import InvalidInputError, ResourceLimitError
from .group import CycleType

ORACLE_MAX_POINTS = 12
ORACLE_MAX_DILATION = 6


@dataclass(frozen=True)
class EhrhartSeries:
    """``sum_k L(k) t**k = (sum_i numerator[i] t**i) / (1 - t)**denominator_exponent``."""

    numerator: tuple[int, ...]
    denominator_exponent: int

    def as_dict(self) -> dict:
        return {"numerator": list(self.numerator), "denominator_exponent": self.denominator_exponent}

    def render(self, factor: tuple[int, ...] | None = None, power: int = 1) -> str:
        """Human-readable form, e.g. ``(1 + 2t)^2 / (1-t)^8``.

        If ``factor`` and ``power`` are given the numerator is shown as that
        power, otherwise it is expanded.
        """
        poly = factor if factor is not None else self.numerator
        text = _render_poly(poly)
        if power != 1:
            text = f"({text})^{power}"
        elif len([c for c in poly if c]) > 1:
            text = f"({text})"
        return f"{text} / (1-t)^{self.denominator_exponent}"


def _render_poly(coeffs) -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            mono = "t" if i == 1 else f"t^{i}"
            parts.append(mono if c == 1 else f"{c}{mono}")
    return " + ".join(parts) or "0"


def poly_mul(p, q) -> tuple[int, ...]:
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                out[i + j] += x * y
    return tuple(out)


def poly_pow(p, e: int) -> tuple[int, ...]:
    out: tuple[int, ...] = (1,)
    for _ in range(e):
        out = poly_mul(out, p)
    return out


def hstar_product_simplices(a: int, b: int) -> EhrhartSeries:
    """Series of the product of unimodular simplices of dimensions ``a`` and ``b``."""
    if a < 0 or b < 0:
        raise InvalidInputError("simplex dimensions must be nonnegative")
    return EhrhartSeries(tuple(comb(a, i) * comb(b, i) for i in range(min(a, b) + 1)), a + b + 1)


def two_orbit_factor(ct: CycleType) -> tuple[tuple[int, ...], int]:
    """Numerator of one join factor and the join multiplicity ``q``."""
    if ct.t != 2:
        raise InvalidInputError(f"two-orbit series needs exactly two cycles, got t = {ct.t}")
    l1, l2 = ct.lengths
    q = math.gcd(l1, l2)
    return hstar_product_simplices(l1 // q - 1, l2 // q - 1).numerator, q


def ehrhart_two_orbit(ct: CycleType) -> EhrhartSeries:
    factor, q = two_orbit_factor(ct)
    l1, l2 = ct.lengths
    return EhrhartSeries(poly_pow(factor, q), l1 + l2 - q)


def ehrhart_values(series: EhrhartSeries, k_max: int) -> list[int]:
    """``L(0), ..., L(k_max)`` from the series."""
    D = series.denominator_exponent
    return [
        sum(h * comb(k + D - 1 - i, D - 1) for i, h in enumerate(series.numerator) if k + D - 1 - i >= 0)
        for k in range(k_max + 1)
    ]


def _compositions(total: int, parts: int):
    """All tuples of ``parts`` nonnegative ints summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def count_lattice_points_oracle(ct: CycleType, k: int, hrep=None) -> int:
    """Integer points of the ``k``-th dilate, by enumeration against the facets.

    Only points whose blocks each sum to ``k`` are generated; each is then
    tested against every equality and inequality of the facet description
    (scaled to the dilate).
    """
    n = ct.n_points
    if n > ORACLE_MAX_POINTS or k > ORACLE_MAX_DILATION or k < 1:
        raise ResourceLimitError(
            f"lattice point oracle limited to n <= {ORACLE_MAX_POINTS}, "
            f"1 <= k <= {ORACLE_MAX_DILATION} (got n = {n}, k = {k})",
            {"n": n, "k": k},
        )
    if hrep is None:
        from .embed import all_vertices
        from .hull import facet_enumeration

        hrep = facet_enumeration(all_vertices(ct))
    # functional rows are (offset, c_1..c_n); dilate offsets by k
    eqs = [(row[0] * k, row[1:]) for row in hrep.equalities]
    ineqs = [(row[0] * k, row[1:]) for row in hrep.inequalities]
    count = 0
    for blocks in product(*(list(_compositions(k, ell)) for ell in ct.lengths)):
        x = [v for blk in blocks for v in blk]
        if all(r + sum(c * xi for c, xi in zip(coef, x) if c) == 0 for r, coef in eqs) and all(
            r + sum(c * xi for c, xi in zip(coef, x) if c) >= 0 for r, coef in ineqs
        ):
            count += 1
    return count
