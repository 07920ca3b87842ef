"""Independent oracles and generators shared by the test modules.

Nothing here calls into the package's canonicalization, elimination or LP
code, so agreement with these routines is a genuine second route.
"""

import random
from fractions import Fraction
from itertools import combinations, permutations

from hypothesis import strategies as st

from flagsymp.tournament import Tournament


def random_tournament(n, rng):
    return Tournament.from_bits(n, [rng.random() < 0.5 for _ in range(n * (n - 1) // 2)])


def random_metric_values(count, rng, hi=40):
    return [Fraction(rng.randint(1, hi), rng.randint(1, 9)) for _ in range(count)]


def random_perm(n, rng):
    p = list(range(1, n + 1))
    rng.shuffle(p)
    return p


@st.composite
def tournaments(draw, min_n=2, max_n=7):
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    return Tournament.from_bits(n, bits)


@st.composite
def permutations_of(draw, n):
    return draw(st.permutations(list(range(1, n + 1))))


positive_fractions = st.fractions(min_value=Fraction(1, 30), max_value=50, max_denominator=30)


def arc_table(t):
    """0-based boolean matrix built from the public ``beats`` accessor only."""
    n = t.n
    return [[i != j and t.beats(i + 1, j + 1) for j in range(n)] for i in range(n)]


def oracle_canonical_code(t):
    """Lexicographic minimum of the upper-triangle bit string over all n! relabelings."""
    n = t.n
    a = arc_table(t)
    best = None
    for p in permutations(range(n)):
        bits = "".join("1" if a[p[i]][p[j]] else "0" for i, j in combinations(range(n), 2))
        if best is None or bits < best:
            best = bits
    return f"{n}:{best}"


def oracle_classes(n):
    """Dedup all 2^C(n,2) labelled tournaments by the oracle code."""
    m = n * (n - 1) // 2
    seen = set()
    for mask in range(1 << m):
        seen.add(oracle_canonical_code(Tournament.from_bits(n, [(mask >> b) & 1 for b in range(m)])))
    return sorted(seen)


def oracle_cycle_count(t):
    a = arc_table(t)
    return sum(
        1
        for i, j, k in combinations(range(t.n), 3)
        if (a[i][j] and a[j][k] and a[k][i]) or (a[i][k] and a[k][j] and a[j][i])
    )


def oracle_hamiltonian(t):
    a = arc_table(t)
    n = t.n
    return any(
        all(a[c[i]][c[(i + 1) % n]] for i in range(n))
        for c in ([0] + list(rest) for rest in permutations(range(1, n)))
    )


def oracle_coefficient(t, lam, triple):
    """dOmega coefficient from the source/middle/sink description of a triple.

    Transitive: +-(lam[src,sink] - lam[src,mid] - lam[mid,sink]); cyclic: +-(sum of the three).
    Only the absolute value is compared, so the overall sign convention drops out.
    """
    i, j, k = triple
    a = arc_table(t)
    nodes = (i - 1, j - 1, k - 1)
    wins = {v: sum(a[v][u] for u in nodes if u != v) for v in nodes}

    def w(u, v):
        return lam[min(u, v) + 1, max(u, v) + 1]

    if sorted(wins.values()) == [1, 1, 1]:
        return w(nodes[0], nodes[1]) + w(nodes[0], nodes[2]) + w(nodes[1], nodes[2])
    src = next(v for v in nodes if wins[v] == 2)
    mid = next(v for v in nodes if wins[v] == 1)
    sink = next(v for v in nodes if wins[v] == 0)
    return abs(w(src, sink) - w(src, mid) - w(mid, sink))


def seeded(seed):
    return random.Random(seed)
