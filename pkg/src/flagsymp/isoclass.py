"""Canonical labeling and isomorphism-class enumeration of tournaments.

The canonical code of a tournament is the lexicographically smallest ``"n:bits"``
code over all relabelings.  Bits are row-major, so the row of position 1 is
fixed entirely by which player lands there and by splitting the rest into the
players it loses to (placed first, giving zeros) and the players it beats.
Repeating this per position turns the n! scan into a search over an ordered
partition in which only the choices tying for the smallest row are kept.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb, factorial, gcd

from .tournament import Tournament, TournamentError

MAX_CANONICAL_N = 12
MAX_CENSUS_N = 8


def _canonical_rows(out: tuple[int, ...], n: int) -> tuple[tuple[int, ...], list[int]]:
    """Return the minimal row sequence and one ordering (0-based players) realizing it.

    A search state is ``(order, cells)``: players fixed at the first positions
    plus an ordered partition of the remaining players, as bitmasks.
    """
    states = [((), (((1 << n) - 1),))]
    rows: list[int] = []
    for _ in range(n):
        best = None
        nxt = {}
        for order, cells in states:
            first = cells[0]
            cand = first
            while cand:
                low = cand & -cand
                v = low.bit_length() - 1
                cand ^= low
                beaten = out[v]
                row = 0
                new_cells = []
                rest_first = first & ~low
                for cell in (rest_first,) + cells[1:]:
                    if not cell:
                        continue
                    lose_to = cell & ~beaten
                    win = cell & beaten
                    a, b = lose_to.bit_count(), win.bit_count()
                    # a zeros then b ones
                    row = (row << (a + b)) | ((1 << b) - 1)
                    if lose_to:
                        new_cells.append(lose_to)
                    if win:
                        new_cells.append(win)
                if best is not None and row > best:
                    continue
                if best is None or row < best:
                    best = row
                    nxt = {}
                key = tuple(new_cells)
                if key not in nxt:
                    nxt[key] = order + (v,)
        rows.append(best)
        states = [(order, key) for key, order in nxt.items()]
    return tuple(rows), list(states[0][0])


def canonical_labeling(t: Tournament) -> list[int]:
    """1-based permutation ``perm`` with ``t.relabel(perm)`` carrying the canonical code."""
    _, order = _canonical_rows(t.out, t.n)
    perm = [0] * t.n
    for pos, v in enumerate(order):
        perm[v] = pos + 1
    return perm


def canonical_form(t: Tournament) -> Tournament:
    if t.n > MAX_CANONICAL_N:
        raise TournamentError(f"canonical labeling supported for n <= {MAX_CANONICAL_N}")
    return t.relabel(canonical_labeling(t))


def canonical_code(t: Tournament) -> str:
    return canonical_form(t).code


def brute_force_canonical_code(t: Tournament) -> str:
    """Minimum code over all n! relabelings; reference oracle for small n."""
    return min(t.relabel(p).code for p in itertools.permutations(range(1, t.n + 1)))


def are_isomorphic(a: Tournament, b: Tournament) -> bool:
    if a.n != b.n:
        raise TournamentError(f"size mismatch: {a.n} vs {b.n}")
    if a.sorted_scores() != b.sorted_scores():
        return False
    return canonical_code(a) == canonical_code(b)


def _check_census_n(n: int):
    if not 2 <= n <= MAX_CENSUS_N:
        raise TournamentError(f"class enumeration supported for 2 <= n <= {MAX_CENSUS_N}, got {n}")


def extend(t: Tournament, beats_new: int) -> Tournament:
    """Add player ``n+1``; bit ``i`` of ``beats_new`` set means player ``i+1`` beats it."""
    n = t.n
    out = list(t.out)
    new = 0
    for i in range(n):
        if beats_new >> i & 1:
            out[i] |= 1 << n
        else:
            new |= 1 << i
    out.append(new)
    return Tournament(n + 1, tuple(out))


def _extensions(code: str) -> set[str]:
    t = Tournament.from_code(code)
    return {canonical_code(extend(t, mask)) for mask in range(1 << t.n)}


def enumerate_classes(n: int, jobs: int = 1) -> list[str]:
    """Sorted canonical codes, one per isomorphism class, by one-player augmentation."""
    _check_census_n(n)
    return list(_enumerate_cached(n, jobs if n >= 7 else 1))


@lru_cache(maxsize=None)
def _enumerate_cached(n: int, jobs: int) -> tuple[str, ...]:
    if n == 2:
        return (canonical_code(Tournament.canonical(2)),)
    parents = _enumerate_cached(n - 1, 1)
    found: set[str] = set()
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for codes in pool.map(_extensions, parents, chunksize=8):
                found |= codes
    else:
        for code in parents:
            found |= _extensions(code)
    return tuple(sorted(found))


def brute_force_classes(n: int) -> list[str]:
    """Canonicalize every one of the 2^C(n,2) labeled tournaments (n <= 5 in tests)."""
    _check_census_n(n)
    m = comb(n, 2)
    seen = set()
    for word in range(1 << m):
        bits = [(word >> (m - 1 - idx)) & 1 for idx in range(m)]
        seen.add(canonical_code(Tournament.from_bits(n, bits)))
    return sorted(seen)


def burnside_class_count(n: int) -> int:
    """Number of isomorphism classes of n-tournaments by Burnside's lemma.

    A permutation fixes some tournament only when all its cycles are odd; it
    then fixes ``2^orbits`` tournaments, one free orientation per orbit of
    unordered pairs.
    """
    total = 0
    for parts in _partitions(n):
        if any(p % 2 == 0 for p in parts):
            continue
        # pair orbits: (L-1)/2 inside an odd cycle of length L, gcd(a, b) between two cycles
        orbits = sum((p - 1) // 2 for p in parts)
        orbits += sum(gcd(a, b) for a, b in itertools.combinations(parts, 2))
        total += _class_size(parts, n) * (1 << orbits)
    count, rem = divmod(total, factorial(n))
    assert rem == 0
    return count


def _partitions(n: int, largest: int | None = None):
    if n == 0:
        yield ()
        return
    largest = n if largest is None else largest
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def _class_size(parts: tuple[int, ...], n: int) -> int:
    """Number of permutations of n with the given cycle type."""
    denom = 1
    for length, mult in _multiplicities(parts).items():
        denom *= length**mult * factorial(mult)
    return factorial(n) // denom


def _multiplicities(parts):
    counts: dict[int, int] = {}
    for p in parts:
        counts[p] = counts.get(p, 0) + 1
    return counts
