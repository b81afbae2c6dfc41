"""Exact facet enumeration and face tests for integer point sets.

``facet_enumeration`` converts a vertex list into a facet description with
the double description method, working exactly in integers. Functionals are
written as rows ``(r, c_1, ..., c_n)`` meaning ``r + c @ x >= 0`` (or ``= 0``
for equalities).

Canonical form of an inequality: reduce it modulo the affine hull so that it
vanishes on every column that is not a pivot of the row reduction of
``[1 | points]``, then scale to coprime integers. Two functionals define the
same facet exactly when their canonical forms agree.
"""

from __future__ import annotations

import logging
import math
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidInputError, ResourceLimitError
from .linalg import IncrementalRank, dot, nullspace, rank_int, rank_mod_p, rref, to_primitive_ints
from .lp import find_feasible

log = logging.getLogger(__name__)

BUDGET_RAYS_ENV = "CYCLOTOPE_BUDGET_RAYS"
# elements per vectorised containment test; bounds peak memory
_CONTAIN_CHUNK = 1 << 22


@dataclass(frozen=True)
class HullBudget:
    max_points: int = 200
    max_dim: int = 64
    max_rays: int = 200_000

    @classmethod
    def from_env(cls, **overrides) -> "HullBudget":
        """Explicit overrides beat the environment, which beats the defaults."""
        env = os.environ.get(BUDGET_RAYS_ENV)
        if env and overrides.get("max_rays") is None:
            try:
                overrides["max_rays"] = int(env)
            except ValueError:
                raise InvalidInputError(f"{BUDGET_RAYS_ENV}={env!r} is not an integer") from None
        return cls(**{k: v for k, v in overrides.items() if v is not None})


@dataclass
class HRepresentation:
    """Facet description; rows are ``(offset, c_1, ..., c_n)``."""

    equalities: list[tuple[int, ...]]
    inequalities: list[tuple[int, ...]]
    dim: int
    ambient_dim: int
    stats: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "equalities": [list(r) for r in self.equalities],
            "inequalities": [list(r) for r in self.inequalities],
        }

    def to_text(self) -> str:
        """Plain matrix format: an ``EQ m n+1`` block, then ``INEQ m n+1``."""
        width = self.ambient_dim + 1
        lines = [f"EQ {len(self.equalities)} {width}"]
        lines += [" ".join(map(str, r)) for r in self.equalities]
        lines.append(f"INEQ {len(self.inequalities)} {width}")
        lines += [" ".join(map(str, r)) for r in self.inequalities]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "HRepresentation":
        eqs = [tuple(int(x) for x in r) for r in data["equalities"]]
        ineqs = [tuple(int(x) for x in r) for r in data["inequalities"]]
        rows = eqs + ineqs
        ambient = len(rows[0]) - 1 if rows else 0
        dim = ambient - len(eqs)
        return cls(eqs, ineqs, dim, ambient)

    @classmethod
    def from_text(cls, text: str) -> "HRepresentation":
        lines = [ln.split() for ln in text.splitlines() if ln.strip()]
        out = {}
        i = 0
        while i < len(lines):
            tag, m, _ = lines[i]
            m = int(m)
            key = {"EQ": "equalities", "INEQ": "inequalities"}[tag]
            out[key] = [[int(x) for x in row] for row in lines[i + 1:i + 1 + m]]
            i += m + 1
        return cls.from_dict(out)


def _check_points(points: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    if len(points) == 0:
        raise InvalidInputError("need at least one point")
    pts = [tuple(int(x) for x in p) for p in points]
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise InvalidInputError("points have different lengths")
    return pts


class AffineFrame:
    """Affine hull of a point set and the reduction modulo it.

    ``free`` lists the columns of ``[1 | x]`` (0 is the constant) that are
    pivots of its row reduction; every canonical functional is supported on
    them. ``equalities`` holds one primitive integer row per remaining column.
    """

    def __init__(self, points: Sequence[Sequence[int]]):
        self.points = _check_points(points)
        self.n = len(self.points[0])
        M = [(1,) + p for p in self.points]
        R, pivots = rref(M)
        self.free = pivots
        self.dim = len(pivots) - 1
        kernel = nullspace(M, self.n + 1)
        self.equalities = [tuple(to_primitive_ints(v)) for v in kernel]
        self._eq_pivot = [c for c in range(self.n + 1) if c not in set(pivots)]

    def reduce(self, functional: Sequence) -> tuple[int, ...]:
        """Canonical form of ``(r, c_1..c_n)``, positive scaling only."""
        f = [Fraction(x) for x in functional]
        for col, eq in zip(self._eq_pivot, self.equalities):
            x = f[col]
            if x:
                lead = eq[col]
                f = [a - x * Fraction(e, lead) for a, e in zip(f, eq)]
        return tuple(to_primitive_ints(f))

    def lift(self, reduced: Sequence[int]) -> tuple[int, ...]:
        """Place coefficients given on ``free`` columns into a full row."""
        row = [0] * (self.n + 1)
        for col, x in zip(self.free, reduced):
            row[col] = x
        return tuple(row)


def canonical_inequality(points, functional) -> tuple[int, ...]:
    return AffineFrame(points).reduce(functional)


def _popcount(arr: np.ndarray) -> np.ndarray:
    return np.bitwise_count(arr).sum(axis=-1)


# Ray coordinates stay in int64 while they are this small; beyond it the
# matrix switches to Python integers (dtype=object).
_INT64_SAFE = 1 << 24


def _to_words(mask: int, nwords: int) -> np.ndarray:
    return np.array([(mask >> (64 * w)) & 0xFFFFFFFFFFFFFFFF for w in range(nwords)], dtype=np.uint64)


def _primitive_rows(U: np.ndarray) -> np.ndarray:
    if U.dtype == object:
        rows = []
        for row in U:
            g = math.gcd(*row)
            rows.append([x // g for x in row] if g > 1 else list(row))
        return np.array(rows, dtype=object).reshape(U.shape)
    g = np.gcd.reduce(U, axis=1)
    g[g == 0] = 1
    return U // g[:, None]


def _fit_dtype(U: np.ndarray) -> np.ndarray:
    big = U.size and np.abs(U).max() > _INT64_SAFE
    if U.dtype == object and not big:
        return U.astype(np.int64)
    if U.dtype != object and big:
        return U.astype(object)
    return U


def _dd_step(U: np.ndarray, Z: np.ndarray, vals: np.ndarray, D: int, vbit: np.ndarray):
    """Intersect the cone with one more halfspace ``vals >= 0``.

    ``U`` holds the current extreme rays, ``Z`` their zero sets. A pair of
    rays on opposite sides is combined only if it is adjacent, i.e. no third
    ray is zero everywhere both of them are.
    """
    pos = np.nonzero(vals > 0)[0]
    neg_mask = vals < 0
    zer = vals == 0
    nwords = Z.shape[1]
    new_U, new_Z = [], []
    if pos.size and neg_mask.any():
        for p in pos:
            # rays sharing fewer than D-1 zeros with p cannot matter for its pairs
            near = np.nonzero(_popcount(Z & Z[p]) >= D - 1)[0]
            nbr = near[neg_mask[near]]
            if nbr.size == 0:
                continue
            commons = Z[nbr] & Z[p]
            Znear = Z[near]
            hits = np.empty(len(nbr), dtype=np.int64)
            rows = max(1, _CONTAIN_CHUNK // (len(near) * nwords))
            for lo in range(0, len(nbr), rows):
                chunk = commons[lo:lo + rows]
                contain = np.all((Znear[None, :, :] & chunk[:, None, :]) == chunk[:, None, :], axis=2)
                hits[lo:lo + rows] = contain.sum(axis=1)
            adj = hits == 2
            if not adj.any():
                continue
            ns = nbr[adj]
            new_U.append(vals[p] * U[ns] - vals[ns][:, None] * U[p][None, :])
            new_Z.append(commons[adj] | vbit)
    keep = ~neg_mask
    Zk = Z[keep].copy()
    Zk[zer[keep]] |= vbit
    Uk = U[keep]
    if new_U:
        Un = _primitive_rows(np.vstack(new_U))
        return np.vstack([Uk, Un]), np.vstack([Zk] + new_Z)
    return Uk, Zk


def facet_enumeration(points: Sequence[Sequence[int]], budget: HullBudget | None = None,
                      order: str = "lex") -> HRepresentation:
    """Complete irredundant facet list of ``conv(points)``.

    Points are inserted in lexicographic order of their coordinates
    (``order="input"`` keeps the given order). Raises
    :class:`ResourceLimitError` when a budget is exceeded; nothing partial is
    returned.
    """
    budget = budget or HullBudget.from_env()
    frame = AffineFrame(points)
    pts = frame.points
    V = len(pts)
    D = frame.dim
    if V > budget.max_points or D > budget.max_dim:
        raise ResourceLimitError(
            f"hull budget exceeded: {V} points (max {budget.max_points}), "
            f"dim {D} (max {budget.max_dim})",
            {"points": V, "dim": D},
        )
    stats = {"points": V, "dim": D, "max_rays": 0, "steps": 0}
    if D == 0:
        return HRepresentation(frame.equalities, [], 0, frame.n, stats)

    W = [[p[c - 1] if c else 1 for c in frame.free] for p in pts]
    if order == "lex":
        seq = sorted(range(V), key=lambda i: pts[i])
    elif order == "input":
        seq = list(range(V))
    else:
        raise InvalidInputError(f"unknown insertion order {order!r}")

    # initial simplex: first D+1 linearly independent rows in insertion order
    acc = IncrementalRank()
    base = []
    for i in seq:
        if acc.add(W[i]):
            base.append(i)
            if len(base) == D + 1:
                break
    B = [W[i] for i in base]
    # columns of B^{-1} generate the cone {u : B u >= 0}
    inv, _ = rref([row + [int(i == j) for j in range(D + 1)] for i, row in enumerate(B)])
    vecs = [to_primitive_ints([inv[i][D + 1 + j] for i in range(D + 1)]) for j in range(D + 1)]
    U = _fit_dtype(np.array(vecs, dtype=object))
    Wobj = np.array(W, dtype=object)
    Wint = Wobj.astype(np.int64) if np.abs(Wobj).max() <= _INT64_SAFE else Wobj
    nwords = (V + 63) // 64
    Z = np.zeros((D + 1, nwords), dtype=np.uint64)
    for j in range(D + 1):
        Z[j] = _to_words(sum(1 << i for k, i in enumerate(base) if k != j), nwords)

    processed = list(base)
    base_set = set(base)
    remaining = [i for i in seq if i not in base_set]
    for step, v in enumerate(remaining, 1):
        w = Wint[v] if U.dtype != object else Wobj[v]
        U, Z = _dd_step(U, Z, U @ w, D, _to_words(1 << v, nwords))
        U = _fit_dtype(U)
        processed.append(v)
        stats["steps"] = step
        stats["max_rays"] = max(stats["max_rays"], len(U))
        log.debug("dd step %d/%d: point %d, %d rays", step, len(remaining), v, len(U))
        if len(U) > budget.max_rays:
            stats["rays"] = len(U)
            stats["processed_points"] = len(processed)
            raise ResourceLimitError(
                f"ray budget {budget.max_rays} exceeded after {len(processed)} of {V} points",
                stats,
            )

    ineqs = sorted(frame.lift([int(x) for x in u]) for u in U)
    stats["facets"] = len(ineqs)
    hrep = HRepresentation(frame.equalities, ineqs, D, frame.n, stats)
    verify_hrep(pts, hrep)
    return hrep


def tight_indices(points, functional) -> list[int]:
    return [i for i, p in enumerate(points) if functional[0] + dot(functional[1:], p) == 0]


def tight_rank_is(points: Sequence[Sequence[int]], idx: Sequence[int], target: int) -> bool:
    """Whether the points ``idx`` have affine rank exactly ``target``.

    Caller guarantees the rank cannot exceed ``target``; a modular rank equal
    to ``target`` then certifies it, otherwise an exact integer rank decides.
    """
    rows = [(1,) + tuple(points[i]) for i in idx]
    if not rows:
        return target == -1
    if rank_mod_p(rows) - 1 == target:
        return True
    return rank_int(rows) - 1 == target


def _values(points, rows) -> np.ndarray:
    """Matrix of ``r + c @ p`` for every row and point, exact."""
    P = np.array([(1,) + tuple(p) for p in points], dtype=object)
    R = np.array(rows, dtype=object).reshape(len(rows), P.shape[1])
    if R.size and np.abs(R).max() <= _INT64_SAFE and np.abs(P).max() <= _INT64_SAFE:
        return R.astype(np.int64) @ P.astype(np.int64).T
    return R @ P.T


def verify_hrep(points, hrep: HRepresentation) -> None:
    """Exhaustive post-check; raises AssertionError on any violation."""
    if hrep.equalities:
        assert not _values(points, hrep.equalities).any(), "equality violated"
    if not hrep.inequalities:
        return
    vals = _values(points, hrep.inequalities)
    assert (vals >= 0).all(), "inequality violated"
    seen = set()
    for row in vals:
        tight = np.nonzero(row == 0)[0].tolist()
        assert tight_rank_is(points, tight, hrep.dim - 1), "inequality is not facet-defining"
        key = frozenset(tight)
        assert key not in seen, "duplicate facet"
        seen.add(key)


# ---------------------------------------------------------------- face tests


def is_face(points: Sequence[Sequence[int]], subset: Iterable[int]) -> bool:
    """Whether ``subset`` (point indices) is the vertex set of a face.

    Decided by an exact LP: find an affine functional that vanishes on the
    subset and is at least 1 on every other point. When all coordinates are
    nonnegative the problem is first restricted to the coordinate face
    ``{x_j = 0 for j outside the subset's support}``, which is a face of the
    polytope, so nothing is lost.
    """
    pts = _check_points(points)
    S = sorted(set(subset))
    if any(not 0 <= i < len(pts) for i in S):
        raise InvalidInputError("subset indices out of range")
    if not S or len(S) == len(pts):
        return True
    cand = list(range(len(pts)))
    coords = list(range(len(pts[0])))
    if all(x >= 0 for p in pts for x in p):
        support = {j for i in S for j, x in enumerate(pts[i]) if x}
        cand = [i for i in cand if all(j in support for j, x in enumerate(pts[i]) if x)]
        coords = sorted(support)
    Sset = set(S)
    others = [i for i in cand if i not in Sset]
    if not others:
        return True
    A_eq = [[pts[i][j] for j in coords] + [1] for i in S]
    A_ge = [[pts[i][j] for j in coords] + [1] for i in others]
    sol = find_feasible(A_eq, [0] * len(A_eq), A_ge, [1] * len(A_ge), nvars=len(coords) + 1)
    return sol is not None


def edge_count(points: Sequence[Sequence[int]], max_pairs: int = 20_000) -> int:
    pairs = len(points) * (len(points) - 1) // 2
    if pairs > max_pairs:
        raise ResourceLimitError(f"{pairs} vertex pairs exceed the budget of {max_pairs}",
                                 {"pairs": pairs, "limit": max_pairs})
    return sum(1 for i, j in combinations(range(len(points)), 2) if is_face(points, (i, j)))


def vertex_edge_degree(points: Sequence[Sequence[int]], vertex: int = 0) -> int:
    """Number of edges at one vertex, each decided by :func:`is_face`."""
    return sum(1 for j in range(len(points)) if j != vertex and is_face(points, (vertex, j)))


@dataclass
class NeighborlyReport:
    cycle_type: tuple
    l: int
    subset_size: int
    exhaustive: bool
    tested: int
    counterexample: tuple | None
    seed: int | None
    hypothesis_failure: tuple | None = None

    @property
    def verdict(self) -> str:
        return "counterexample" if self.counterexample else "conjecture-consistent"

    def as_dict(self) -> dict:
        return {
            "cycle_type": list(self.cycle_type),
            "l": self.l,
            "subset_size": self.subset_size,
            "exhaustive": self.exhaustive,
            "tested": self.tested,
            "counterexample": list(self.counterexample) if self.counterexample else None,
            "seed": self.seed,
            "hypothesis_holds": self.hypothesis_failure is None,
            "hypothesis_failure": list(self.hypothesis_failure) if self.hypothesis_failure else None,
            "verdict": self.verdict,
        }

    def summary(self) -> str:
        scope = f"all {self.tested}" if self.exhaustive else f"{self.tested} sampled"
        note = ""
        if self.hypothesis_failure:
            note = f" [hypothesis fails for I = {set(self.hypothesis_failure)}]"
        if self.counterexample:
            return (f"l={self.l}: counterexample {list(self.counterexample)} "
                    f"after {scope} subsets{note}")
        return (f"l={self.l}: no counterexample among {scope} subsets of size "
                f"{self.subset_size} (conjecture-consistent, not a proof){note}")


def neighborliness_hypothesis_failure(ct, l: int):
    """First index set violating the neighborliness hypothesis, else ``None``."""
    from .group import _lcm_of

    t = ct.t
    need = math.ceil(t / (l + 1))
    d = ct.d
    for r in range(need, t + 1):
        for I in combinations(range(1, t + 1), r):
            if _lcm_of(ct, I) != d:
                return I
    return None


def neighborliness_probe(ct, l: int, sample: int | None = None, seed: int = 0,
                         require_hypothesis: bool = True) -> NeighborlyReport:
    """Test whether every ``l+1`` vertices span a face.

    Subsets of size exactly ``l+1`` are tested; smaller ones are faces of
    those. With ``sample=None`` (or a sample at least the number of subsets)
    all subsets are checked, otherwise a seeded random sample of distinct
    subsets. The outcome is a report, never a proof.

    With ``require_hypothesis=False`` a failing precondition is recorded in
    the report instead of raising, so the probe can explore beyond it.
    """
    from .embed import all_vertices

    if l < 1:
        raise InvalidInputError("l must be at least 1")
    bad = neighborliness_hypothesis_failure(ct, l)
    if bad is not None and require_hypothesis:
        raise InvalidInputError(
            f"hypothesis fails for I = {set(bad)}: d_I = "
            f"{math.lcm(*(ct.lengths[i - 1] for i in bad))} != d = {ct.d}"
        )
    pts = all_vertices(ct)
    size = min(l + 1, len(pts))
    total = math.comb(len(pts), size)
    if sample is None or sample >= total:
        subsets: Iterable[tuple] = combinations(range(len(pts)), size)
        exhaustive = True
    else:
        rng = random.Random(seed)
        chosen: set = set()
        while len(chosen) < sample:
            chosen.add(tuple(sorted(rng.sample(range(len(pts)), size))))
        subsets = sorted(chosen)
        exhaustive = False
    tested = 0
    for sub in subsets:
        tested += 1
        if not is_face(pts, sub):
            return NeighborlyReport(tuple(ct.lengths), l, size, exhaustive, tested, sub, seed, bad)
    return NeighborlyReport(tuple(ct.lengths), l, size, exhaustive, tested, None,
                            None if exhaustive else seed, bad)
