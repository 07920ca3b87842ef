"""Census over all tournament isomorphism classes and the experiments built on it."""

from __future__ import annotations

import json
import random
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .families import family_tournament
from .isoclass import MAX_CENSUS_N, canonical_code, enumerate_classes
from .symplectic import MetricClass, MetricSpec, classify_metric, solve_family
from .tournament import Tournament, TournamentError

CENSUS_FIELDS = (
    "code",
    "score",
    "integrable",
    "parabolic",
    "hamiltonian",
    "forbidden4",
    "witness",
    "admits12s",
    "dimension",
    "family",
)


@dataclass(frozen=True)
class CensusRecord:
    code: str
    score: tuple[int, ...]
    integrable: bool
    parabolic: bool
    hamiltonian: bool
    forbidden4: bool
    witness: tuple[int, ...] | None
    admits12s: bool
    dimension: int
    family: tuple[int, int] | None

    def to_json(self) -> dict:
        d = asdict(self)
        d["score"] = list(self.score)
        d["witness"] = list(self.witness) if self.witness else None
        d["family"] = list(self.family) if self.family else None
        return {key: d[key] for key in CENSUS_FIELDS}

    @classmethod
    def from_json(cls, d: dict) -> CensusRecord:
        if set(d) != set(CENSUS_FIELDS):
            raise ValueError(f"census record keys {sorted(d)} do not match the schema")
        return cls(
            code=d["code"],
            score=tuple(d["score"]),
            integrable=d["integrable"],
            parabolic=d["parabolic"],
            hamiltonian=d["hamiltonian"],
            forbidden4=d["forbidden4"],
            witness=tuple(d["witness"]) if d["witness"] else None,
            admits12s=d["admits12s"],
            dimension=d["dimension"],
            family=tuple(d["family"]) if d["family"] else None,
        )


def _check_n(n: int, lo: int = 3, hi: int = MAX_CENSUS_N):
    if not lo <= n <= hi:
        raise TournamentError(f"n={n} outside the supported range {lo}..{hi}")


def family_codes(n: int) -> dict[str, tuple[int, int]]:
    if n < 4:
        return {}
    return {canonical_code(family_tournament(n, k)): (n, k) for k in range(1, n - 2)}


def classify_code(code: str, families: dict[str, tuple[int, int]] | None = None,
                  parabolic_code: str | None = None) -> CensusRecord:
    t = Tournament.from_code(code)
    n = t.n
    canon = canonical_code(t)
    families = family_codes(n) if families is None else families
    parabolic_code = canonical_code(Tournament.parabolic(n)) if parabolic_code is None else parabolic_code
    if n >= 4:
        profile = t.four_subtournament_profile()
        forbidden, witness = profile.forbidden, profile.witness
    else:
        forbidden, witness = False, None
    sol = solve_family(t)
    problems = sol.check()
    if problems:
        raise AssertionError(f"{code}: " + "; ".join(problems))
    return CensusRecord(
        code=code,
        score=t.sorted_scores(),
        integrable=t.is_transitive(),
        parabolic=canon == parabolic_code,
        hamiltonian=t.is_hamiltonian(),
        forbidden4=forbidden,
        witness=witness,
        admits12s=sol.feasible,
        dimension=sol.dimension,
        family=families.get(canon),
    )


def _classify_many(args):
    codes, n = args
    fam = family_codes(n)
    par = canonical_code(Tournament.parabolic(n))
    return [classify_code(c, fam, par) for c in codes]


def census(n: int, out: str | Path | None = None, jobs: int = 1) -> list[CensusRecord]:
    """One record per isomorphism class, in sorted canonical-code order."""
    _check_n(n)
    codes = enumerate_classes(n, jobs=jobs)
    if jobs > 1 and len(codes) > 64:
        from concurrent.futures import ProcessPoolExecutor

        size = max(1, len(codes) // (jobs * 8))
        chunks = [(codes[i:i + size], n) for i in range(0, len(codes), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = [r for batch in pool.map(_classify_many, chunks) for r in batch]
    else:
        records = _classify_many((codes, n))
    if out is not None:
        write_jsonl(records, out)
    return records


def write_jsonl(records: Iterable[CensusRecord], path: str | Path):
    path = Path(path)
    try:
        if path.parent != Path(""):
            path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="\n") as fh:
            for rec in records:
                fh.write(json.dumps(rec.to_json()) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write census to {path}: {exc}") from exc


def read_jsonl(path: str | Path) -> list[CensusRecord]:
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise OSError(f"cannot read census from {path}: {exc}") from exc
    return [CensusRecord.from_json(json.loads(line)) for line in lines if line.strip()]


def reverify(records: Sequence[CensusRecord], sample: int = 10, seed: int = 0) -> list[str]:
    """Recompute a random sample of records; returns mismatch descriptions."""
    rng = random.Random(seed)
    picks = rng.sample(list(records), min(sample, len(records)))
    mismatches = []
    for rec in picks:
        fresh = classify_code(rec.code)
        if fresh != rec:
            mismatches.append(f"{rec.code}: stored {rec.to_json()} recomputed {fresh.to_json()}")
    return mismatches


def record_invariant_violations(records: Iterable[CensusRecord]) -> list[str]:
    """Hard invariants every census must satisfy."""
    bad = []
    for r in records:
        n = int(r.code.split(":")[0])
        if r.forbidden4 and r.admits12s:
            bad.append(f"{r.code}: forbidden 4-subtournament yet admits a (1,2)-symplectic metric")
        transitive_scores = r.score == tuple(range(n))
        if r.integrable != transitive_scores:
            bad.append(f"{r.code}: integrable flag disagrees with the score vector")
        if r.integrable and not (r.admits12s and r.dimension == n - 1):
            bad.append(f"{r.code}: integrable class without an (n-1)-dimensional Kähler family")
    return bad


@dataclass
class CensusSummary:
    n: int
    classes: int
    admitting: int
    dimensions: list[int]
    admitting_codes: list[str]
    families_found: list[tuple[int, int]]
    seconds: float

    def to_json(self) -> dict:
        d = asdict(self)
        d["families_found"] = [list(f) for f in self.families_found]
        return d


def summarize(records: Sequence[CensusRecord], seconds: float = 0.0) -> CensusSummary:
    n = int(records[0].code.split(":")[0])
    adm = [r for r in records if r.admits12s]
    return CensusSummary(
        n=n,
        classes=len(records),
        admitting=len(adm),
        dimensions=sorted(r.dimension for r in adm),
        admitting_codes=[r.code for r in adm],
        families_found=sorted(r.family for r in records if r.family),
        seconds=seconds,
    )


@dataclass
class ConjectureReport:
    which: int
    n: int
    classes: int
    holds: bool
    agree: int = 0
    theorem_violations: list[str] = field(default_factory=list)
    counterexamples: list[str] = field(default_factory=list)
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self) -> dict:
        return asdict(self)


def verify_conjecture1(n: int, records: Sequence[CensusRecord] | None = None) -> ConjectureReport:
    """Compare "admits a metric" with "no forbidden 4-subtournament" over every class.

    Only the direction forbidden => not admitting is a theorem; the converse is
    reported, never asserted.
    """
    _check_n(n, lo=4)
    start = time.perf_counter()
    records = census(n) if records is None else records
    agree = sum(r.admits12s == (not r.forbidden4) for r in records)
    violations = [r.code for r in records if r.forbidden4 and r.admits12s]
    counter = [r.code for r in records if not r.forbidden4 and not r.admits12s]
    counts = Counter((r.forbidden4, r.admits12s) for r in records)
    return ConjectureReport(
        which=1,
        n=n,
        classes=len(records),
        holds=not violations and not counter,
        agree=agree,
        theorem_violations=violations,
        counterexamples=counter,
        detail={f"forbidden={f},admits={a}": c for (f, a), c in sorted(counts.items())},
        seconds=time.perf_counter() - start,
    )


def verify_conjecture2(n: int, records: Sequence[CensusRecord] | None = None) -> ConjectureReport:
    """Every admitting non-integrable class should carry an n-dimensional family."""
    _check_n(n)
    start = time.perf_counter()
    records = census(n) if records is None else records
    nonkahler = [r for r in records if r.admits12s and not r.integrable]
    counter = [r.code for r in nonkahler if r.dimension != n]
    return ConjectureReport(
        which=2,
        n=n,
        classes=len(records),
        holds=not counter,
        agree=len(nonkahler) - len(counter),
        counterexamples=counter,
        detail={"dimensions": {r.code: r.dimension for r in nonkahler}},
        seconds=time.perf_counter() - start,
    )


@dataclass
class NormalMetricReport:
    n: int
    classes: int
    accepting: list[str]
    verdicts: dict[str, str]

    def to_json(self) -> dict:
        return asdict(self)


def normal_metric_survey(n: int) -> NormalMetricReport:
    _check_n(n, hi=7)
    codes = enumerate_classes(n)
    verdicts = {}
    for code in codes:
        t = Tournament.from_code(code)
        verdicts[code] = classify_metric(t, MetricSpec.normal(n)).value
    accepting = [c for c, v in verdicts.items() if v != MetricClass.NONE.value]
    return NormalMetricReport(n, len(codes), accepting, verdicts)


@dataclass
class ForbiddenReport:
    n: int
    forbidden_classes: int
    certified: int
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        return d


def verify_forbidden_infeasible(n: int) -> ForbiddenReport:
    """Every class containing a forbidden 4-subtournament must be infeasible with a valid certificate."""
    _check_n(n, lo=4)
    forbidden = certified = 0
    failures = []
    for code in enumerate_classes(n):
        t = Tournament.from_code(code)
        if not t.four_subtournament_profile().forbidden:
            continue
        forbidden += 1
        sol = solve_family(t)
        if sol.feasible:
            failures.append(f"{code}: strictly positive solution exists")
        elif sol.certificate is None or not sol.certificate.verify(sol.system):
            failures.append(f"{code}: certificate does not verify")
        else:
            certified += 1
    return ForbiddenReport(n, forbidden, certified, failures)
