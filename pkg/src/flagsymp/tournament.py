"""Tournaments on players ``1..n`` and the combinatorial predicates used by the classifier.

A tournament is stored as one out-neighbour bitmask per player (bit ``v`` of
``out[u]`` set means ``u+1`` beats ``v+1``).  Every public method takes and
returns 1-based player labels.

Text code ``"n:bits"``: the bits run over pairs ``(1,2),(1,3),...,(1,n),(2,3),...``
in row-major upper-triangle order and bit ``1`` at pair ``(i, j)``, ``i < j``,
means ``i -> j``.  Census files depend on this order, so it is frozen.
"""

from __future__ import annotations

import enum
import itertools
from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Iterator, Sequence

MIN_PLAYERS = 2
MAX_PLAYERS = 16


class TournamentError(ValueError):
    """Invalid tournament data or player indices."""


class CodeParseError(TournamentError):
    """Malformed ``"n:bits"`` text code."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class TripleClass(enum.Enum):
    CYCLIC = "cyclic"
    TRANSITIVE = "transitive"


# 4-tournament classes keyed by sorted score multiset; these four are pairwise distinct
FOUR_CLASSES = {
    (0, 1, 2, 3): "transitive",
    (1, 1, 2, 2): "strong",
    (0, 2, 2, 2): "forbidden_sink",
    (1, 1, 1, 3): "forbidden_source",
}
FORBIDDEN_FOUR = frozenset({"forbidden_sink", "forbidden_source"})


def pairs(n: int) -> list[tuple[int, int]]:
    """Unordered pairs ``(i, j)``, ``1 <= i < j <= n``, in encoding order."""
    return list(itertools.combinations(range(1, n + 1), 2))


def triples(n: int) -> Iterator[tuple[int, int, int]]:
    return itertools.combinations(range(1, n + 1), 3)


@dataclass(frozen=True)
class Tournament:
    n: int
    out: tuple[int, ...]

    def __post_init__(self):
        n = self.n
        if not MIN_PLAYERS <= n <= MAX_PLAYERS:
            raise TournamentError(f"player count {n} outside [{MIN_PLAYERS}, {MAX_PLAYERS}]")
        if len(self.out) != n:
            raise TournamentError("need one out-neighbour mask per player")
        full = (1 << n) - 1
        for u, mask in enumerate(self.out):
            if mask & (1 << u) or mask & ~full:
                raise TournamentError(f"player {u + 1} has an invalid out-neighbour mask")
            for v in range(u + 1, n):
                if bool(mask >> v & 1) == bool(self.out[v] >> u & 1):
                    raise TournamentError(f"pair ({u + 1},{v + 1}) is not decided exactly once")

    # -- construction -------------------------------------------------------

    @classmethod
    def from_code(cls, code: str) -> Tournament:
        head, sep, bits = code.strip().partition(":")
        if not sep:
            raise CodeParseError(f"code {code!r} lacks the 'n:' prefix")
        try:
            n = int(head)
        except ValueError:
            raise CodeParseError(f"player count {head!r} is not an integer") from None
        if not MIN_PLAYERS <= n <= MAX_PLAYERS:
            raise CodeParseError(f"player count {n} outside [{MIN_PLAYERS}, {MAX_PLAYERS}]")
        expected = comb(n, 2)
        for idx, ch in enumerate(bits):
            if ch not in "01":
                raise CodeParseError(f"non-bit character {ch!r} at index {idx}", idx)
        if len(bits) != expected:
            idx = min(len(bits), expected)
            raise CodeParseError(
                f"bit string has length {len(bits)}, expected {expected} for n={n} "
                f"(first offending index {idx})",
                idx,
            )
        return cls.from_bits(n, [ch == "1" for ch in bits])

    @classmethod
    def from_bits(cls, n: int, bits: Sequence[bool]) -> Tournament:
        out = [0] * n
        for (i, j), b in zip(pairs(n), bits, strict=True):
            if b:
                out[i - 1] |= 1 << (j - 1)
            else:
                out[j - 1] |= 1 << (i - 1)
        return cls(n, tuple(out))

    @classmethod
    def from_arcs(cls, n: int, arcs: Sequence[tuple[int, int]]) -> Tournament:
        """Build from 1-based arcs ``(winner, loser)``; every pair must appear exactly once."""
        out = [0] * n
        for u, v in arcs:
            out[u - 1] |= 1 << (v - 1)
        return cls(n, tuple(out))

    @classmethod
    def from_relation(cls, n: int, beats) -> Tournament:
        """Build from a predicate ``beats(i, j)`` consulted for each pair ``i < j``."""
        return cls.from_bits(n, [bool(beats(i, j)) for i, j in pairs(n)])

    @classmethod
    def canonical(cls, n: int) -> Tournament:
        """The transitive tournament ``i -> j`` iff ``i < j``."""
        return cls.from_relation(n, lambda i, j: True)

    @classmethod
    def parabolic(cls, n: int) -> Tournament:
        """Reference parabolic tournament (identity relabeling): ``i -> j`` iff ``j - i`` is odd."""
        return cls.from_relation(n, lambda i, j: (j - i) % 2 == 1)

    # -- encoding -----------------------------------------------------------

    @property
    def bits(self) -> str:
        return "".join("1" if self.out[i - 1] >> (j - 1) & 1 else "0" for i, j in pairs(self.n))

    @property
    def code(self) -> str:
        return f"{self.n}:{self.bits}"

    def __str__(self):
        return self.code

    # -- basic queries ------------------------------------------------------

    def _check(self, *players: int):
        for p in players:
            if not 1 <= p <= self.n:
                raise TournamentError(f"player {p} outside 1..{self.n}")

    def beats(self, i: int, j: int) -> bool:
        self._check(i, j)
        return bool(self.out[i - 1] >> (j - 1) & 1)

    def eps(self, i: int, j: int) -> int:
        """Skew sign: +1 if ``i -> j``, -1 if ``j -> i``, 0 on the diagonal."""
        if i == j:
            self._check(i)
            return 0
        return 1 if self.beats(i, j) else -1

    def arcs(self) -> list[tuple[int, int]]:
        return [(i, j) if self.beats(i, j) else (j, i) for i, j in pairs(self.n)]

    def score_vector(self) -> tuple[int, ...]:
        return tuple(mask.bit_count() for mask in self.out)

    def sorted_scores(self) -> tuple[int, ...]:
        return tuple(sorted(self.score_vector()))

    def triple_class(self, i: int, j: int, k: int) -> TripleClass:
        self._check(i, j, k)
        if not i < j < k:
            raise TournamentError(f"triple ({i},{j},{k}) is not strictly increasing")
        pattern = (self.eps(i, j), self.eps(j, k), self.eps(i, k))
        if pattern in ((1, 1, -1), (-1, -1, 1)):
            return TripleClass.CYCLIC
        return TripleClass.TRANSITIVE

    def cyclic_triples(self) -> list[tuple[int, int, int]]:
        return [t for t in triples(self.n) if self.triple_class(*t) is TripleClass.CYCLIC]

    def transitive_triples(self) -> list[tuple[int, int, int]]:
        return [t for t in triples(self.n) if self.triple_class(*t) is TripleClass.TRANSITIVE]

    def three_cycle_count(self) -> int:
        # C(n,3) - sum C(s_i,2): each transitive triple has exactly one player beating the other two
        return comb(self.n, 3) - sum(comb(s, 2) for s in self.score_vector())

    # -- derived tournaments ------------------------------------------------

    def subtournament(self, players: Sequence[int]) -> Tournament:
        players = list(players)
        if len(players) < MIN_PLAYERS:
            raise TournamentError("a subtournament needs at least two players")
        self._check(*players)
        if any(a >= b for a, b in zip(players, players[1:])):
            raise TournamentError(f"player subset {players} must be strictly increasing")
        m = len(players)
        return Tournament.from_relation(m, lambda a, b: self.beats(players[a - 1], players[b - 1]))

    def relabel(self, perm: Sequence[int]) -> Tournament:
        """Image under the bijection ``p -> perm[p-1]`` (1-based): ``perm[i] -> perm[j]`` iff ``i -> j``."""
        if sorted(perm) != list(range(1, self.n + 1)):
            raise TournamentError(f"{list(perm)} is not a permutation of 1..{self.n}")
        out = [0] * self.n
        for u in range(self.n):
            mask = 0
            for v in range(self.n):
                if self.out[u] >> v & 1:
                    mask |= 1 << (perm[v] - 1)
            out[perm[u] - 1] = mask
        return Tournament(self.n, tuple(out))

    def reversal(self) -> Tournament:
        return Tournament.from_relation(self.n, lambda i, j: not self.beats(i, j))

    # -- structural predicates ---------------------------------------------

    def is_transitive(self) -> bool:
        return self.three_cycle_count() == 0

    def is_strong(self) -> bool:
        full = (1 << self.n) - 1
        into = [0] * self.n
        for u, mask in enumerate(self.out):
            for v in range(self.n):
                if mask >> v & 1:
                    into[v] |= 1 << u
        return _closure(self.out, 1) == full and _closure(into, 1) == full

    def hamiltonian_cycle(self) -> tuple[int, ...] | None:
        """An n-cycle as ``(p1, ..., pn, p1)`` starting at player 1, or None.

        Strong connectivity decides existence (Camion); the cycle is grown
        from a 3-cycle by the constructive step of Moon's pancyclicity proof.
        """
        if self.n < 3:
            raise TournamentError("Hamiltonicity needs n >= 3")
        if not self.is_strong():
            return None
        cycle = self._grow_cycle()
        start = cycle.index(0)
        cycle = cycle[start:] + cycle[:start]
        return tuple(p + 1 for p in cycle) + (1,)

    def is_hamiltonian(self) -> bool:
        return self.hamiltonian_cycle() is not None

    def _grow_cycle(self) -> list[int]:
        out, n = self.out, self.n

        def b(u, v):
            return bool(out[u] >> v & 1)

        cycle = next(
            [u, v, w]
            for u, v, w in itertools.permutations(range(n), 3)
            if b(u, v) and b(v, w) and b(w, u)
        )
        while len(cycle) < n:
            on = set(cycle)
            rest = [v for v in range(n) if v not in on]
            k = len(cycle)
            inserted = False
            for v in rest:
                for pos in range(k):
                    a, c = cycle[pos], cycle[(pos + 1) % k]
                    if b(a, v) and b(v, c):
                        cycle.insert(pos + 1, v)
                        inserted = True
                        break
                if inserted:
                    break
            if inserted:
                continue
            # every outside vertex beats all of the cycle (A) or loses to all of it (B)
            sources = [v for v in rest if all(b(v, c) for c in cycle)]
            sinks = [v for v in rest if all(b(c, v) for c in cycle)]
            lo, hi = next((x, y) for x in sinks for y in sources if b(x, y))
            # c0 -> lo -> hi -> c2 replaces c0 -> c1 -> c2
            cycle = [cycle[0], lo, hi] + cycle[2:]
        return cycle

    def is_parabolic(self) -> bool:
        from .isoclass import are_isomorphic

        if self.n < 3:
            raise TournamentError("parabolicity needs n >= 3")
        return are_isomorphic(self, Tournament.parabolic(self.n))

    def four_subtournament_profile(self) -> FourProfile:
        if self.n < 4:
            raise TournamentError("4-subtournament profile needs n >= 4")
        counts: Counter[str] = Counter({name: 0 for name in FOUR_CLASSES.values()})
        witness = None
        for quad in itertools.combinations(range(1, self.n + 1), 4):
            name = FOUR_CLASSES[self.subtournament(quad).sorted_scores()]
            counts[name] += 1
            if witness is None and name in FORBIDDEN_FOUR:
                witness = quad
        return FourProfile(dict(counts), witness)


@dataclass(frozen=True)
class FourProfile:
    counts: dict[str, int]
    witness: tuple[int, ...] | None

    @property
    def forbidden(self) -> bool:
        return self.witness is not None


def _closure(adj: Sequence[int], start: int) -> int:
    seen = frontier = start
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~seen
        seen |= nxt
    return seen


def build_tournament(code: str) -> Tournament:
    return Tournament.from_code(code)
