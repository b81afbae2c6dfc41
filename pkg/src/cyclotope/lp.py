"""Exact two-phase simplex method over the rationals.

Bland's rule (smallest eligible index enters, ties on the ratio test broken
by the smallest basic index) guarantees termination without any tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: str
    x: list[Fraction] | None = None
    value: Fraction | None = None
    pivots: int = 0


class _Tableau:
    def __init__(self, A, b, basis):
        self.A = A
        self.b = b
        self.basis = basis
        self.pivots = 0

    def pivot(self, r, c):
        A, b = self.A, self.b
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        b[r] *= inv
        row = A[r]
        for i in range(len(A)):
            if i != r:
                f = A[i][c]
                if f:
                    A[i] = [x - f * y if y else x for x, y in zip(A[i], row)]
                    b[i] -= f * b[r]
        self.basis[r] = c
        self.pivots += 1

    def reduced_costs(self, cost, columns):
        # z_j - c_j style: we minimise, so a negative reduced cost may enter
        dual = [cost[j] for j in self.basis]
        red = {}
        for j in columns:
            s = cost[j]
            for i, bj in enumerate(self.basis):
                a = self.A[i][j]
                if a:
                    s -= dual[i] * a
            red[j] = s
        return red

    def run(self, cost, allowed):
        """Minimise ``cost`` over the current basis; returns OPTIMAL or UNBOUNDED."""
        while True:
            basic = set(self.basis)
            cols = [j for j in allowed if j not in basic]
            red = self.reduced_costs(cost, cols)
            entering = next((j for j in sorted(cols) if red[j] < 0), None)
            if entering is None:
                return OPTIMAL
            best = None
            for i, row in enumerate(self.A):
                a = row[entering]
                if a > 0:
                    ratio = self.b[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED
            self.pivot(best[1], entering)


def solve_standard_form(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    """Minimise ``c @ x`` subject to ``A x = b``, ``x >= 0``, exactly."""
    m = len(A)
    n = len(c)
    rows = []
    rhs = []
    for row, bi in zip(A, b):
        row = [Fraction(x) for x in row]
        bi = Fraction(bi)
        if bi < 0:
            row = [-x for x in row]
            bi = -bi
        rows.append(row + [Fraction(0)] * m)
        rhs.append(bi)
    for i in range(m):
        rows[i][n + i] = Fraction(1)
    tab = _Tableau(rows, rhs, [n + i for i in range(m)])
    phase1 = [Fraction(0)] * n + [Fraction(1)] * m
    tab.run(phase1, range(n + m))
    if sum(tab.b[i] for i, j in enumerate(tab.basis) if j >= n) != 0:
        return LPResult(INFEASIBLE, pivots=tab.pivots)
    # drive remaining artificial variables out of the basis
    for i in range(m):
        if tab.basis[i] >= n:
            col = next((j for j in range(n) if tab.A[i][j] != 0), None)
            if col is not None:
                tab.pivot(i, col)
    keep = [i for i in range(m) if tab.basis[i] < n]
    tab.A = [tab.A[i] for i in keep]
    tab.b = [tab.b[i] for i in keep]
    tab.basis = [tab.basis[i] for i in keep]
    cost = [Fraction(x) for x in c] + [Fraction(0)] * m
    status = tab.run(cost, range(n))
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, pivots=tab.pivots)
    x = [Fraction(0)] * n
    for i, j in enumerate(tab.basis):
        x[j] = tab.b[i]
    return LPResult(OPTIMAL, x, sum(ci * xi for ci, xi in zip(cost, x)), tab.pivots)


def find_feasible(A_eq=(), b_eq=(), A_ge=(), b_ge=(), nvars: int | None = None) -> list[Fraction] | None:
    """A point ``x`` (free variables) with ``A_eq x = b_eq`` and ``A_ge x >= b_ge``.

    Returns ``None`` when the system is infeasible.
    """
    if nvars is None:
        nvars = len(A_eq[0]) if A_eq else len(A_ge[0])
    n_slack = len(A_ge)
    width = 2 * nvars + n_slack
    A, b = [], []
    for row, bi in zip(A_eq, b_eq):
        A.append(list(row) + [-x for x in row] + [0] * n_slack)
        b.append(bi)
    for s, (row, bi) in enumerate(zip(A_ge, b_ge)):
        slack = [0] * n_slack
        slack[s] = -1
        A.append(list(row) + [-x for x in row] + slack)
        b.append(bi)
    if not A:
        return [Fraction(0)] * nvars
    res = solve_standard_form([0] * width, A, b)
    if res.status != OPTIMAL:
        return None
    return [res.x[i] - res.x[nvars + i] for i in range(nvars)]
