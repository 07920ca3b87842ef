"""Exact two-phase simplex over the rationals with Bland's rule.

Solves ``max c.x  s.t.  A x = b,  x >= 0`` and always returns a certificate:
the optimal dual ``y`` (``A^T y >= c``, ``b.y = c.x``) when optimal, or a
Farkas vector ``y`` (``A^T y >= 0``, ``b.y < 0``) when infeasible.  The
tableau runs on gmpy2 rationals when available; results are Fractions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

ZERO = _Q(0)
ONE = _Q(1)


def _q(x) -> _Q:
    if isinstance(x, Fraction):
        return _Q(x.numerator, x.denominator)
    return _Q(x)


def _frac(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


class LPStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: LPStatus
    x: list[Fraction] | None = None
    value: Fraction | None = None
    y: list[Fraction] | None = None  # optimal dual or Farkas vector
    pivots: int = 0


class _Tableau:
    def __init__(self, A, b, nvars):
        m = len(A)
        self.m, self.nvars = m, nvars
        self.width = nvars + m  # structural columns then one artificial per row
        self.sign = []
        self.rows = []
        for i, (row, rhs) in enumerate(zip(A, b)):
            s = -1 if rhs < 0 else 1
            self.sign.append(s)
            art = [ZERO] * m
            art[i] = ONE
            self.rows.append([_q(s * a) for a in row] + art + [_q(s * rhs)])
        self.basis = list(range(nvars, nvars + m))
        self.obj: list[Fraction] = []
        self.pivots = 0

    def set_objective(self, cost: Sequence[Fraction]):
        # reduced costs z_j - c_j for a maximization; last entry is the objective value
        obj = [-_q(c) for c in cost] + [ZERO]
        for i, bv in enumerate(self.basis):
            cb = cost[bv]
            if cb:
                row = self.rows[i]
                obj = [o + cb * r for o, r in zip(obj, row)]
        self.obj = obj

    def pivot(self, r: int, col: int):
        prow = self.rows[r]
        a = prow[col]
        if a != 1:
            prow = [v / a for v in prow]
            self.rows[r] = prow
        nz = [j for j, v in enumerate(prow) if v]
        for i, row in enumerate(self.rows):
            f = row[col]
            if i != r and f:
                for j in nz:
                    row[j] -= f * prow[j]
        f = self.obj[col]
        if f:
            for j in nz:
                self.obj[j] -= f * prow[j]
        self.basis[r] = col
        self.pivots += 1

    def run(self, allowed: int) -> bool:
        """Optimize over columns ``< allowed``; False means unbounded."""
        while True:
            col = next((j for j in range(allowed) if self.obj[j] < 0), None)
            if col is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                a = row[col]
                if a > 0:
                    key = (row[-1] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], col)

    def duals(self, art_cost) -> list[Fraction]:
        # reduced cost of artificial i is y_i - c_art, with y in the sign-flipped row space
        n = self.nvars
        return [_frac((self.obj[n + i] + art_cost) * self.sign[i]) for i in range(self.m)]


def solve_lp(A: Sequence[Sequence], b: Sequence, c: Sequence) -> LPResult:
    m = len(A)
    nvars = len(c)
    for row in A:
        if len(row) != nvars:
            raise ValueError("constraint row length does not match the cost vector")
    tab = _Tableau(A, b, nvars)
    cost1 = [ZERO] * nvars + [-ONE] * m
    tab.set_objective(cost1)
    tab.run(tab.width)
    if tab.obj[-1] < 0:
        return LPResult(LPStatus.INFEASIBLE, y=tab.duals(-ONE), pivots=tab.pivots)

    # drive zero-level artificials out of the basis where a structural column allows it
    for i in range(m):
        if tab.basis[i] >= nvars:
            col = next((j for j in range(nvars) if tab.rows[i][j]), None)
            if col is not None:
                tab.pivot(i, col)

    cost2 = [_q(x) for x in c] + [ZERO] * m
    tab.set_objective(cost2)
    if not tab.run(nvars):
        return LPResult(LPStatus.UNBOUNDED, pivots=tab.pivots)
    x = [Fraction(0)] * nvars
    for i, bv in enumerate(tab.basis):
        if bv < nvars:
            x[bv] = _frac(tab.rows[i][-1])
    return LPResult(LPStatus.OPTIMAL, x=x, value=_frac(tab.obj[-1]), y=tab.duals(ZERO), pivots=tab.pivots)


def check_farkas(A: Sequence[Sequence], b: Sequence, y: Sequence) -> bool:
    """``A^T y >= 0`` and ``b.y < 0``: no ``x >= 0`` solves ``A x = b``."""
    ncols = len(A[0]) if A else 0
    zero = Fraction(0)
    aty = [sum((Fraction(A[i][j]) * y[i] for i in range(len(A))), zero) for j in range(ncols)]
    by = sum((Fraction(bi) * yi for bi, yi in zip(b, y)), zero)
    return all(v >= 0 for v in aty) and by < 0


def check_optimal(A, b, c, x, y) -> bool:
    """Primal feasibility, dual feasibility and equal objectives."""
    ncols = len(c)
    zero = Fraction(0)
    if any(v < 0 for v in x):
        return False
    for row, bi in zip(A, b):
        if sum((Fraction(a) * v for a, v in zip(row, x)), zero) != bi:
            return False
    for j in range(ncols):
        if sum((Fraction(A[i][j]) * y[i] for i in range(len(A))), zero) < c[j]:
            return False
    primal = sum((Fraction(cj) * xj for cj, xj in zip(c, x)), zero)
    dual = sum((Fraction(bi) * yi for bi, yi in zip(b, y)), zero)
    return primal == dual
