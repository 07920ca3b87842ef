"""Command-line interface: ``flagsymp <command> [options]``.

Exit status 0 on success, 1 when a verification fails, 2 on usage errors
(including malformed tournament codes).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from pathlib import Path
from typing import Sequence

from .exact import fmt_fraction
from .families import FamilyParams, family_metric, family_tournament, lambda_matrix, verify_family
from .isoclass import canonical_code
from .survey import (
    CENSUS_FIELDS,
    census,
    normal_metric_survey,
    read_jsonl,
    record_invariant_violations,
    reverify,
    summarize,
    verify_conjecture1,
    verify_conjecture2,
    verify_forbidden_infeasible,
)
from .symplectic import MetricClass, classify_metric, solve_family
from .tournament import Tournament, TournamentError

CACHE_ENV = "FLAGSYMP_CACHE_DIR"
EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2
VERIFY_TARGETS = ("theorem-2.2", "theorem-3.1", "wolf-gray", "families-4sub")


class UsageError(Exception):
    pass


def _emit_json(payload) -> str:
    return json.dumps(payload, indent=2)


def _emit_csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _parse_tournament(code: str) -> Tournament:
    try:
        return Tournament.from_code(code)
    except TournamentError as exc:
        raise UsageError(f"invalid tournament code: {exc}") from None


def _cache_path(n: int) -> Path | None:
    root = os.environ.get(CACHE_ENV)
    return Path(root) / f"census_n{n}.jsonl" if root else None


def _census_records(n: int, jobs: int):
    """Census from the cache directory when present (spot-checked), otherwise computed."""
    path = _cache_path(n)
    if path is not None and path.exists():
        records = read_jsonl(path)
        if not reverify(records, sample=3):
            return records
    return census(n, out=path, jobs=jobs)


# -- commands ------------------------------------------------------------------


def cmd_classify(args) -> tuple[int, str]:
    t = _parse_tournament(args.tournament)
    profile = t.four_subtournament_profile() if t.n >= 4 else None
    cycle = t.hamiltonian_cycle() if t.n >= 3 else None
    triples = [(tr, t.triple_class(*tr).value) for tr in sorted(t.cyclic_triples() + t.transitive_triples())]
    payload = {
        "code": t.code,
        "canonical": canonical_code(t),
        "score": list(t.score_vector()),
        "integrable": t.is_transitive(),
        "parabolic": t.is_parabolic() if t.n >= 3 else False,
        "hamiltonian": cycle is not None,
        "cycle": list(cycle) if cycle else None,
        "three_cycles": t.three_cycle_count(),
        "forbidden4": profile.forbidden if profile else False,
        "witness": list(profile.witness) if profile and profile.witness else None,
        "four_profile": profile.counts if profile else None,
        "triples": [{"triple": list(tr), "class": cls} for tr, cls in triples],
    }
    if args.format == "json":
        return EXIT_OK, _emit_json(payload)
    if args.format == "csv":
        return EXIT_OK, _emit_csv(["i", "j", "k", "class"], [list(tr) + [cls] for tr, cls in triples])
    lines = [f"{k}: {payload[k]}" for k in
             ("code", "canonical", "score", "integrable", "parabolic", "hamiltonian", "cycle",
              "three_cycles", "forbidden4", "witness", "four_profile")]
    lines += [f"  {tr} {cls}" for tr, cls in triples]
    return EXIT_OK, "\n".join(lines)


def cmd_solve(args) -> tuple[int, str]:
    t = _parse_tournament(args.tournament)
    sol = solve_family(t, integral=args.integral)
    problems = sol.check()
    status = EXIT_FAILED if problems else EXIT_OK
    payload = sol.to_json()
    if args.format == "json":
        return status, _emit_json(payload)
    if args.format == "csv":
        header = ["vector"] + payload["edges"]
        rows = [[f"basis{idx}"] + v for idx, v in enumerate(payload["basis"])]
        if payload["sample"]:
            rows.append(["sample"] + payload["sample"])
        return status, _emit_csv(header, rows)
    system = sol.system
    lines = [
        f"tournament: {t.code}",
        f"constraints ({len(system.rows)}):",
        *(f"  {lbl}: {system.describe_row(r)}" for r, lbl in enumerate(system.triples)),
        f"rank: {sol.rank}",
        f"dimension: {sol.dimension}",
        f"free edges: {payload['free_edges']}",
        f"verdict: {sol.verdict}",
    ]
    if sol.sample is not None:
        lines.append(f"sample (integral): {payload['sample_integral']}")
    else:
        lines.append(f"certificate: {payload['certificate']}")
    lines += [f"problem: {p}" for p in problems]
    return status, "\n".join(lines)


def cmd_family(args) -> tuple[int, str]:
    try:
        t = family_tournament(args.n, args.k)
        params = None
        if args.params:
            params = [p for p in args.params.split(",") if p.strip()]
            FamilyParams(args.n, args.k, tuple(params))
    except (TournamentError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    names = [f"{i},{j}" for i in range(1, args.n + 1) for j in range(i + 1, args.n + 1)]
    payload = {"n": args.n, "k": args.k, "code": t.code, "canonical": canonical_code(t)}
    status = EXIT_OK
    if params is not None:
        metric = family_metric(FamilyParams(args.n, args.k, tuple(params)))
        verdict = classify_metric(t, metric)
        payload["weights"] = metric.to_json()
        payload["classification"] = verdict.value
        if verdict is not MetricClass.ONE_TWO_SYMPLECTIC:
            status = EXIT_FAILED
    if args.emit_matrix or params is None:
        mat = lambda_matrix(args.n, args.k, params)
        payload["matrix"] = [[e if isinstance(e, str) else fmt_fraction(e) for e in row] for row in mat]
    if args.format == "json":
        return status, _emit_json(payload)
    if args.format == "csv":
        if "matrix" in payload:
            return status, _emit_csv([str(j) for j in range(1, args.n + 1)], payload["matrix"])
        return status, _emit_csv(names, [[payload["weights"][e] for e in names]])
    lines = [f"family n={args.n} k={args.k}", f"code: {t.code}", f"canonical: {payload['canonical']}"]
    if "weights" in payload:
        sep = "," if args.n >= 10 else ""
        lines.append("weights: " + ", ".join(f"l{e.replace(',', sep)}={v}" for e, v in payload["weights"].items()))
        lines.append(f"classification: {payload['classification']}")
    if "matrix" in payload:
        width = max(len(e) for row in payload["matrix"] for e in row)
        lines.append("matrix:")
        lines += ["  " + "  ".join(e.rjust(width) for e in row) for row in payload["matrix"]]
    return status, "\n".join(lines)


def cmd_census(args) -> tuple[int, str]:
    start = time.perf_counter()
    out = args.out or _cache_path(args.n)
    records = census(args.n, out=out, jobs=args.jobs)
    bad = record_invariant_violations(records)
    summary = summarize(records, time.perf_counter() - start)
    status = EXIT_FAILED if bad else EXIT_OK
    if args.format == "json":
        return status, _emit_json({"summary": summary.to_json(), "violations": bad,
                                   "records": [r.to_json() for r in records]})
    if args.format == "csv":
        rows = []
        for r in records:
            d = r.to_json()
            rows.append([" ".join(map(str, v)) if isinstance(v, list) else ("" if v is None else v)
                         for v in (d[f] for f in CENSUS_FIELDS)])
        return status, _emit_csv(CENSUS_FIELDS, rows)
    lines = [
        f"n={summary.n}: {summary.classes} classes, {summary.admitting} admit a (1,2)-symplectic metric",
        f"dimensions of admitting classes: {summary.dimensions}",
        f"n-parameter families present: {summary.families_found}",
        f"elapsed: {summary.seconds:.2f}s",
    ]
    if out:
        lines.append(f"written: {out}")
    lines += [f"VIOLATION {b}" for b in bad]
    return status, "\n".join(lines)


def _verify_rows(args) -> list[tuple[str, int, object, bool, str]]:
    rows = []
    target = args.target
    if target == "theorem-2.2":
        for n in range(4, args.n_max + 1):
            rep = verify_forbidden_infeasible(n)
            rows.append((target, n, "", rep.ok,
                         f"{rep.certified}/{rep.forbidden_classes} certified; " + "; ".join(rep.failures)))
    elif target == "theorem-3.1":
        for n in range(4, args.n_max + 1):
            for k in range(1, n - 2):
                rep = verify_family(n, k, seed=args.seed)
                rows.append((target, n, k, rep.ok, "; ".join(rep.failures)))
    elif target == "wolf-gray":
        for n in range(3, min(args.n_max, 7) + 1):
            rep = normal_metric_survey(n)
            if n == 3:
                cyc = canonical_code(Tournament.from_code("3:101"))
                ok = rep.accepting == [cyc]
            else:
                ok = not rep.accepting
            rows.append((target, n, "", ok, f"accepting: {rep.accepting}"))
    elif target == "families-4sub":
        for n in range(4, args.n_max + 1):
            for k in range(1, n - 2):
                t = family_tournament(n, k)
                prof = t.four_subtournament_profile()
                ok = not prof.forbidden and t.is_hamiltonian()
                rows.append((target, n, k, ok, f"profile {prof.counts}"))
    return rows


def cmd_verify(args) -> tuple[int, str]:
    if args.n_max < 3 or args.n_max > 9:
        raise UsageError("--n-max must lie in 3..9")
    rows = _verify_rows(args)
    status = EXIT_OK if all(r[3] for r in rows) else EXIT_FAILED
    header = ["target", "n", "k", "ok", "detail"]
    if args.format == "json":
        return status, _emit_json({"target": args.target, "ok": status == EXIT_OK,
                                   "results": [dict(zip(header, r)) for r in rows]})
    if args.format == "csv":
        return status, _emit_csv(header, rows)
    lines = [f"{'PASS' if ok else 'FAIL'} {tg} n={n}" + (f" k={k}" if k != "" else "") + (f" {d}" if not ok else "")
             for tg, n, k, ok, d in rows]
    lines.append(f"{args.target}: {'all checks passed' if status == EXIT_OK else 'FAILED'}")
    return status, "\n".join(lines)


def cmd_conjecture(args) -> tuple[int, str]:
    lo = 4 if args.which == 1 else 3
    if not lo <= args.n <= 8:
        raise UsageError(f"conjecture {args.which} supports n in {lo}..8")
    records = _census_records(args.n, args.jobs)
    rep = verify_conjecture1(args.n, records) if args.which == 1 else verify_conjecture2(args.n, records)
    # only the forbidden => infeasible direction is a theorem; the conjecture itself is reported
    status = EXIT_FAILED if rep.theorem_violations else EXIT_OK
    if args.format == "json":
        return status, _emit_json(rep.to_json())
    if args.format == "csv":
        return status, _emit_csv(["which", "n", "classes", "agree", "holds", "theorem_violations", "counterexamples"],
                                 [[rep.which, rep.n, rep.classes, rep.agree, rep.holds,
                                   " ".join(rep.theorem_violations), " ".join(rep.counterexamples)]])
    lines = [
        f"conjecture {rep.which}, n={rep.n}: {rep.classes} classes",
        f"holds on this census: {rep.holds}",
        f"agreeing classes: {rep.agree}",
        f"forbidden-yet-admitting violations: {len(rep.theorem_violations)}",
        f"counterexamples: {rep.counterexamples}",
        f"detail: {rep.detail}",
    ]
    return status, "\n".join(lines)


def cmd_normal(args) -> tuple[int, str]:
    if not 3 <= args.n <= 7:
        raise UsageError("normal metric survey supports n in 3..7")
    rep = normal_metric_survey(args.n)
    if args.format == "json":
        return EXIT_OK, _emit_json(rep.to_json())
    if args.format == "csv":
        return EXIT_OK, _emit_csv(["code", "verdict"], sorted(rep.verdicts.items()))
    return EXIT_OK, (f"n={rep.n}: {len(rep.accepting)} of {rep.classes} classes accept the normal metric"
                     + "".join(f"\n  {c}" for c in rep.accepting))


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--jobs", type=int, default=1, help="parallel census workers")

    parser = argparse.ArgumentParser(
        prog="flagsymp",
        description="(1,2)-symplectic invariant metrics on full flag manifolds via tournaments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="combinatorial flags of one tournament")
    p.add_argument("--tournament", required=True, metavar="CODE")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("solve", parents=[common], help="exact (1,2)-symplectic family of one tournament")
    p.add_argument("--tournament", required=True, metavar="CODE")
    p.add_argument("--integral", action="store_true", help="scale the positive sample to integers")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("family", parents=[common], help="family tournament (n, k) and its weight matrix")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--params", help="comma-separated l12,l23,...,l(n-1)n,l1n")
    p.add_argument("--emit-matrix", action="store_true")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("census", parents=[common], help="classify every isomorphism class")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", metavar="FILE.jsonl")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--target", choices=VERIFY_TARGETS, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("conjecture", parents=[common], help="census experiment for a conjecture")
    p.add_argument("--which", type=int, choices=(1, 2), required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("normal", parents=[common], help="which classes accept the normal metric")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_normal)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "census" and not 3 <= args.n <= 8:
        parser.error("census supports n in 3..8")
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    try:
        status, text = args.func(args)
    except UsageError as exc:
        print(f"flagsymp {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"flagsymp {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    print(text)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
