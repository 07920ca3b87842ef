"""Borel-type invariant metrics, dΩ coefficients and the (1,2)-symplectic family of a tournament.

For a metric with weights ``lam[i,j] > 0`` and signed weights
``mu[i,j] = eps[i,j] * lam[i,j]``, the Kähler form has exterior derivative with
one coefficient ``C[i,j,k] = mu[i,j] - mu[i,k] + mu[j,k]`` per triple ``i<j<k``.
A cyclic triple contributes to the (3,0)+(0,3) part and there
``|C| = lam[i,j] + lam[i,k] + lam[j,k] > 0``; a transitive triple contributes
to the (2,1)+(1,2) part.  The metric is (1,2)-symplectic exactly when every
transitive-triple coefficient vanishes, a homogeneous linear system in the
weights.  Strict positivity of its solutions is settled by an exact LP.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .exact import Vector, fmt_fraction, independent_rows, rref, scale_to_integers
from .lp import LPStatus, solve_lp
from .tournament import Tournament, TournamentError, TripleClass, pairs, triples

KAHLER_COMPONENT = "(3,0)+(0,3)"
MIXED_COMPONENT = "(2,1)+(1,2)"


@dataclass(frozen=True)
class MetricSpec:
    """Positive weights on unordered pairs, stored once per pair ``(i, j)``, ``i < j``."""

    n: int
    weights: Mapping[tuple[int, int], Fraction]

    def __post_init__(self):
        expected = pairs(self.n)
        if sorted(self.weights) != expected:
            raise ValueError(f"metric on n={self.n} needs exactly the pairs {expected}")
        clean = {}
        for key in expected:
            val = Fraction(self.weights[key])
            if val <= 0:
                raise ValueError(f"weight lambda{key} = {val} is not positive")
            clean[key] = val
        object.__setattr__(self, "weights", clean)

    @classmethod
    def from_vector(cls, n: int, values: Sequence) -> MetricSpec:
        edges = pairs(n)
        if len(values) != len(edges):
            raise ValueError(f"expected {len(edges)} weights, got {len(values)}")
        return cls(n, dict(zip(edges, (Fraction(v) for v in values))))

    @classmethod
    def from_function(cls, n: int, f: Callable[[int, int], object]) -> MetricSpec:
        return cls(n, {(i, j): Fraction(f(i, j)) for i, j in pairs(n)})

    @classmethod
    def normal(cls, n: int) -> MetricSpec:
        return cls.from_function(n, lambda i, j: 1)

    def __getitem__(self, pair: tuple[int, int]) -> Fraction:
        i, j = pair
        if i == j:
            return Fraction(0)
        return self.weights[(i, j) if i < j else (j, i)]

    def vector(self) -> Vector:
        return [self.weights[e] for e in pairs(self.n)]

    def scaled(self, c) -> MetricSpec:
        return MetricSpec(self.n, {e: Fraction(c) * v for e, v in self.weights.items()})

    def to_json(self) -> dict[str, str]:
        return {f"{i},{j}": fmt_fraction(v) for (i, j), v in self.weights.items()}


def _check_dims(t: Tournament, m: MetricSpec):
    if t.n != m.n:
        raise TournamentError(f"metric is on n={m.n} but tournament has n={t.n}")


def signed_weights(t: Tournament, m: MetricSpec) -> dict[tuple[int, int], Fraction]:
    _check_dims(t, m)
    return {(i, j): t.eps(i, j) * m[i, j] for i, j in pairs(t.n)}


def coefficient(t: Tournament, m: MetricSpec, i: int, j: int, k: int) -> Fraction:
    _check_dims(t, m)
    if not 1 <= i < j < k <= t.n:
        raise TournamentError(f"triple ({i},{j},{k}) must satisfy 1 <= i < j < k <= {t.n}")
    return t.eps(i, j) * m[i, j] - t.eps(i, k) * m[i, k] + t.eps(j, k) * m[j, k]


@dataclass(frozen=True)
class TripleReport:
    triple: tuple[int, int, int]
    triple_class: TripleClass
    coefficient: Fraction

    @property
    def component(self) -> str:
        return KAHLER_COMPONENT if self.triple_class is TripleClass.CYCLIC else MIXED_COMPONENT

    def to_json(self) -> dict:
        return {
            "triple": list(self.triple),
            "class": self.triple_class.value,
            "coefficient": fmt_fraction(self.coefficient),
            "component": self.component,
        }


def d_omega_report(t: Tournament, m: MetricSpec) -> list[TripleReport]:
    _check_dims(t, m)
    return [TripleReport(tr, t.triple_class(*tr), coefficient(t, m, *tr)) for tr in triples(t.n)]


class MetricClass(enum.Enum):
    KAHLER = "kahler"
    ONE_TWO_SYMPLECTIC = "(1,2)-symplectic"
    NONE = "none"


def classify_metric(t: Tournament, m: MetricSpec) -> MetricClass:
    reports = d_omega_report(t, m)
    if any(r.coefficient for r in reports if r.triple_class is TripleClass.TRANSITIVE):
        return MetricClass.NONE
    # cyclic coefficients are sums of positive weights, so dΩ = 0 forces transitivity
    if all(r.coefficient == 0 for r in reports):
        return MetricClass.KAHLER
    return MetricClass.ONE_TWO_SYMPLECTIC


@dataclass(frozen=True)
class ConstraintSystem:
    n: int
    edges: list[tuple[int, int]]
    triples: list[tuple[int, int, int]]
    rows: list[list[int]]

    @cached_property
    def sparse(self) -> list[tuple[tuple[int, int], ...]]:
        """Per row, its ``(column, coefficient)`` pairs; every row has exactly three."""
        return [tuple((c, a) for c, a in enumerate(row) if a) for row in self.rows]

    def residuals(self, values: Sequence) -> list[Fraction]:
        vals = [Fraction(v) for v in values]
        return [sum((a * vals[c] for c, a in terms), Fraction(0)) for terms in self.sparse]

    def combine(self, multipliers: Sequence) -> list[Fraction]:
        """``sum_r multipliers[r] * rows[r]`` as a vector over the edges."""
        w = [Fraction(0)] * len(self.edges)
        for y, terms in zip(multipliers, self.sparse):
            if y:
                for c, a in terms:
                    w[c] += a * y
        return w

    def satisfied_by(self, values: Sequence) -> bool:
        return not any(self.residuals(values))

    def describe_row(self, r: int) -> str:
        terms = []
        for a, (i, j) in zip(self.rows[r], self.edges):
            if a:
                sign = "+" if a > 0 else "-"
                terms.append(f"{sign} l{i}{j}" if self.n < 10 else f"{sign} l{i},{j}")
        text = " ".join(terms)
        return (text[2:] if text.startswith("+ ") else "-" + text[2:]) + " = 0"


def constraint_system(t: Tournament) -> ConstraintSystem:
    edges = pairs(t.n)
    col = {e: c for c, e in enumerate(edges)}
    rows, labels = [], []
    for i, j, k in t.transitive_triples():
        row = [0] * len(edges)
        row[col[i, j]] = t.eps(i, j)
        row[col[i, k]] = -t.eps(i, k)
        row[col[j, k]] = t.eps(j, k)
        rows.append(row)
        labels.append((i, j, k))
    return ConstraintSystem(t.n, edges, labels, rows)


@dataclass(frozen=True)
class FarkasCertificate:
    """Row multipliers ``y`` whose combination ``w = sum_r y_r * row_r`` is non-negative and nonzero.

    Any strictly positive ``lam`` solving the system would give
    ``0 = sum_r y_r (row_r . lam) = w . lam > 0``.
    """

    multipliers: dict[tuple[int, int, int], Fraction]
    combination: list[Fraction]

    def verify(self, system: ConstraintSystem) -> bool:
        if set(self.multipliers) - set(system.triples):
            return False
        w = system.combine([self.multipliers.get(label, 0) for label in system.triples])
        return w == list(self.combination) and all(v >= 0 for v in w) and any(w)

    def to_json(self) -> dict:
        return {
            "multipliers": {",".join(map(str, k)): fmt_fraction(v) for k, v in self.multipliers.items() if v},
            "combination": [fmt_fraction(v) for v in self.combination],
        }


@dataclass(frozen=True)
class SolutionSpace:
    tournament: Tournament
    system: ConstraintSystem
    rank: int
    basis: list[Vector]
    free_edges: list[tuple[int, int]]
    sample: MetricSpec | None = None
    margin: Fraction | None = None
    certificate: FarkasCertificate | None = None
    lp_pivots: int = field(default=0, compare=False)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def feasible(self) -> bool:
        return self.sample is not None

    @property
    def verdict(self) -> str:
        return "feasible_interior" if self.feasible else "infeasible"

    def integer_sample(self) -> MetricSpec | None:
        if self.sample is None:
            return None
        return MetricSpec.from_vector(self.system.n, scale_to_integers(self.sample.vector()))

    def check(self) -> list[str]:
        """Substitution checks on kernel, sample and certificate; returns failure messages."""
        problems = []
        for idx, v in enumerate(self.basis):
            if not self.system.satisfied_by(v):
                problems.append(f"basis vector {idx} violates a constraint row")
        if self.sample is not None:
            if not self.system.satisfied_by(self.sample.vector()):
                problems.append("sample violates a constraint row")
        elif self.certificate is None or not self.certificate.verify(self.system):
            problems.append("infeasible verdict without a valid certificate")
        return problems

    def to_json(self) -> dict:
        out = {
            "tournament": self.tournament.code,
            "dimension": self.dimension,
            "rank": self.rank,
            "edges": [f"{i},{j}" for i, j in self.system.edges],
            "free_edges": [f"{i},{j}" for i, j in self.free_edges],
            "basis": [[fmt_fraction(x) for x in v] for v in self.basis],
            "verdict": self.verdict,
            "sample": None,
            "sample_integral": None,
            "margin": None,
            "certificate": None,
        }
        if self.sample is not None:
            out["sample"] = [fmt_fraction(x) for x in self.sample.vector()]
            out["sample_integral"] = [fmt_fraction(x) for x in self.integer_sample().vector()]
        if self.margin is not None:
            out["margin"] = fmt_fraction(self.margin)
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


def positivity(system: ConstraintSystem):
    """Maximize ``t`` subject to the rows, ``sum(lam) = 1`` and ``lam_e >= t``.

    Variables are ``u_e = lam_e - t >= 0`` and ``t = t_plus - t_minus``.  Only a
    maximal independent subset of rows enters the LP; the others follow.
    Returns ``(sample_vector, margin, None)`` when the optimum is positive,
    otherwise ``(None, optimum_or_None, certificate)``.
    """
    m = len(system.edges)
    keep = independent_rows(system.rows, m)
    A, b = [], []
    for r in keep:
        row = system.rows[r]
        s = sum(row)
        A.append(list(row) + [s, -s])
        b.append(0)
    A.append([1] * m + [m, -m])
    b.append(1)
    c = [0] * m + [1, -1]
    res = solve_lp(A, b, c)
    if res.status is LPStatus.OPTIMAL and res.value > 0:
        t = res.x[m] - res.x[m + 1]
        return [u + t for u in res.x[:m]], res.value, None, res.pivots
    full = [Fraction(0)] * len(system.rows)
    for yr, r in zip(res.y, keep):
        full[r] = yr
    mult = dict(zip(system.triples, full))
    w = system.combine(full)
    value = res.value if res.status is LPStatus.OPTIMAL else None
    return None, value, FarkasCertificate(mult, w), res.pivots


def solve_family(t: Tournament, integral: bool = False) -> SolutionSpace:
    """Exact kernel of the (1,2)-symplectic system plus a strict-positivity verdict."""
    system = constraint_system(t)
    ech = rref(system.rows, len(system.edges))
    basis = ech.kernel_basis()
    free = [system.edges[c] for c in ech.free]
    sample_vec, margin, cert, pivots = positivity(system)
    sample = None
    if sample_vec is not None:
        if integral:
            sample_vec = scale_to_integers(sample_vec)
        sample = MetricSpec.from_vector(t.n, sample_vec)
    return SolutionSpace(t, system, ech.rank, basis, free, sample, margin, cert, pivots)
