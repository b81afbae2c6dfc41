"""Independent reference computations used by the tests.

These work on explicit permutations and full permutation matrices, or by
brute force over point subsets, and share no code paths with the package
beyond the ``CycleType`` container.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np


def generator(lengths):
    """Permutation of ``range(sum(lengths))`` with consecutive cycles."""
    perm, start = [], 0
    for ell in lengths:
        perm += [start + (j + 1) % ell for j in range(ell)]
        start += ell
    return np.array(perm, dtype=np.int64)


def powers(lengths):
    """Row ``m`` is the permutation g^m, for m in [0, order)."""
    g = generator(lengths)
    order = math.lcm(*lengths) if lengths else 1
    out = np.empty((order, len(g)), dtype=np.int64)
    cur = np.arange(len(g))
    for m in range(order):
        out[m] = cur
        cur = g[cur]
    return out


def cycles_of(perm):
    seen, out = set(), []
    for x in range(len(perm)):
        if x in seen:
            continue
        cyc, y = [], x
        while y not in seen:
            seen.add(y)
            cyc.append(y)
            y = int(perm[y])
        out.append(cyc)
    return out


def subelements(lengths, k):
    """All m with g^m a product of a subset of the disjoint cycles of g^k."""
    P = powers(lengths)
    ident = np.arange(P.shape[1])
    agree = P == P[k]
    fixed = P == ident
    ok = np.ones(P.shape[0], dtype=bool)
    for cyc in cycles_of(P[k]):
        ok &= agree[:, cyc].all(axis=1) | fixed[:, cyc].all(axis=1)
    return tuple(int(m) for m in np.flatnonzero(ok))


def full_matrix_dimension(lengths):
    """Affine dimension of the permutation matrices of the group."""
    P = powers(lengths)
    n = P.shape[1]
    if P.shape[0] == 1:
        return 0
    mats = np.zeros((P.shape[0], n * n), dtype=np.int64)
    rows = np.arange(n)
    for m, perm in enumerate(P):
        mats[m, rows * n + perm] = 1
    diffs = mats[1:] - mats[0]
    return exact_rank(diffs.tolist())


def exact_rank(rows):
    """Rank over the rationals by plain Gaussian elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rank < len(m) and col < ncols:
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        col += 1
    return rank


def projected_vertices(lengths):
    """First rows of the cycle blocks of every group element."""
    P = powers(lengths)
    pts = []
    for perm in P:
        v, start = [], 0
        for ell in lengths:
            block = [0] * ell
            block[int(perm[start]) - start] = 1
            v += block
            start += ell
        pts.append(tuple(v))
    return pts


def _hyperplane_through(points):
    """Primitive integer (offset, c) vanishing on ``points``, if unique."""
    n = len(points[0])
    rows = [[1] + list(p) for p in points]
    # nullspace of rows, expected one dimensional
    m = [[Fraction(x) for x in r] for r in rows]
    pivots, r = [], 0
    for c in range(n + 1):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        m[r] = [x / m[r][c] for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n + 1) if c not in pivots]
    if len(free) != 1:
        return None
    f = free[0]
    vec = [Fraction(0)] * (n + 1)
    vec[f] = Fraction(1)
    for i, c in enumerate(pivots):
        vec[c] = -m[i][f]
    den = math.lcm(*(x.denominator for x in vec))
    ints = [int(x * den) for x in vec]
    g = math.gcd(*ints)
    return tuple(x // g for x in ints)


def brute_force_facets(points):
    """Facets of a full-dimensional point set as primitive ``(offset, c)``.

    Every affinely independent n-subset spans a candidate hyperplane; it is
    kept when all points lie weakly on one side. Exponential, tiny inputs only.
    """
    n = len(points[0])
    facets = set()
    for sub in itertools.combinations(points, n):
        h = _hyperplane_through(sub)
        if h is None:
            continue
        vals = [h[0] + sum(c * x for c, x in zip(h[1:], p)) for p in points]
        if all(v >= 0 for v in vals):
            facets.add(h)
        elif all(v <= 0 for v in vals):
            facets.add(tuple(-x for x in h))
    return facets
