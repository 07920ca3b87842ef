"""Exact rational linear algebra: row reduction, kernels, independent row subsets.

Elimination is fraction-free: rows are kept as integer vectors divided by their
content after each update, and Fractions appear only when kernel vectors are
read off the reduced form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence

Vector = list[Fraction]


def fmt_fraction(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text.strip())


def _primitive(row: list[int]) -> list[int]:
    g = reduce(gcd, row, 0)
    if g > 1:
        row = [x // g for x in row]
    return row


def _as_integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        if all(type(x) is int for x in row):
            out.append(list(row))
            continue
        fr = [Fraction(x) for x in row]
        den = lcm(*(x.denominator for x in fr)) if fr else 1
        out.append([int(x * den) for x in fr])
    return out


@dataclass
class Echelon:
    """Reduced row echelon form: ``rows[r]`` has a nonzero at ``pivots[r]`` and zeros in other pivot columns."""

    ncols: int
    rows: list[list[int]]
    pivots: list[int]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def free(self) -> list[int]:
        piv = set(self.pivots)
        return [c for c in range(self.ncols) if c not in piv]

    def kernel_basis(self) -> list[Vector]:
        """One vector per free column: 1 there, 0 at the other free columns."""
        basis = []
        for f in self.free:
            v = [Fraction(0)] * self.ncols
            v[f] = Fraction(1)
            for row, p in zip(self.rows, self.pivots):
                if row[f]:
                    v[p] = Fraction(-row[f], row[p])
            basis.append(v)
        return basis


def rref(rows: Sequence[Sequence], ncols: int) -> Echelon:
    m = _as_integer_rows(rows)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        sel = next((i for i in range(r, len(m)) if m[i][c]), None)
        if sel is None:
            continue
        m[r], m[sel] = m[sel], m[r]
        prow = m[r]
        a = prow[c]
        for i in range(len(m)):
            if i == r or not m[i][c]:
                continue
            b = m[i][c]
            m[i] = _primitive([a * x - b * y for x, y in zip(m[i], prow)])
        pivots.append(c)
        r += 1
    rows = [row if row[p] > 0 else [-x for x in row] for row, p in zip(m, pivots)]
    return Echelon(ncols, rows, pivots)


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    return rref(rows, ncols).kernel_basis()


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return rref(rows, ncols).rank


def independent_rows(rows: Sequence[Sequence], ncols: int) -> list[int]:
    """Indices of a maximal linearly independent subset, greedily in input order."""
    basis: dict[int, list[int]] = {}  # pivot column -> reduced row
    keep = []
    for idx, row in enumerate(_as_integer_rows(rows)):
        v = row
        for c in range(ncols):
            if not v[c]:
                continue
            if c in basis:
                b = basis[c]
                v = _primitive([b[c] * x - v[c] * y for x, y in zip(v, b)])
            else:
                basis[c] = v
                keep.append(idx)
                break
    return keep


def mat_vec(rows: Sequence[Sequence], v: Sequence) -> Vector:
    return [sum((Fraction(a) * b for a, b in zip(row, v)), Fraction(0)) for row in rows]


def in_span(vectors: Sequence[Sequence], target: Sequence, ncols: int) -> bool:
    return rank(list(vectors) + [list(target)], ncols) == rank(vectors, ncols)


def scale_to_integers(v: Sequence[Fraction]) -> list[int]:
    """Smallest positive multiple of ``v`` with integer, coprime entries."""
    den = lcm(*(Fraction(x).denominator for x in v))
    ints = [int(Fraction(x) * den) for x in v]
    g = reduce(gcd, ints, 0)
    return [x // g for x in ints] if g else ints
