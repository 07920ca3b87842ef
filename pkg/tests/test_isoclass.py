import random

import pytest
from hypothesis import given

from flagsymp import Tournament, TournamentError
from flagsymp.isoclass import (
    are_isomorphic,
    brute_force_canonical_code,
    brute_force_classes,
    burnside_class_count,
    canonical_code,
    canonical_form,
    canonical_labeling,
    enumerate_classes,
    extend,
)

from helpers import oracle_canonical_code, oracle_classes, permutations_of, random_perm, tournaments

# Frozen from the exhaustive oracle in helpers.py (dedup of all 2^C(n,2) labelled tournaments).
CLASSES_4 = ["4:000000", "4:000010", "4:001000", "4:001001"]
CLASSES_5 = [
    "5:0000000000", "5:0000000010", "5:0000001000", "5:0000001001",
    "5:0001000000", "5:0001000001", "5:0001000010", "5:0001000011",
    "5:0001001000", "5:0001010000", "5:0001010001", "5:0011001000",
]
# A000568
CLASS_COUNTS = {1: 1, 2: 1, 3: 2, 4: 4, 5: 12, 6: 56, 7: 456, 8: 6880}


class TestCanonicalCode:
    def test_transitive_class(self):
        rng = random.Random(4)
        base = canonical_code(Tournament.canonical(4))
        assert base == "4:000000"
        for _ in range(20):
            assert canonical_code(Tournament.canonical(4).relabel(random_perm(4, rng))) == base

    def test_both_three_cycles(self):
        a = Tournament.from_arcs(3, [(1, 2), (2, 3), (3, 1)])
        b = Tournament.from_arcs(3, [(1, 3), (3, 2), (2, 1)])
        assert canonical_code(a) == canonical_code(b) == "3:010"

    @given(tournaments(max_n=6))
    def test_matches_independent_oracle(self, t):
        assert canonical_code(t) == oracle_canonical_code(t) == brute_force_canonical_code(t)

    @given(tournaments(max_n=9), permutations_of(9))
    def test_invariant_and_idempotent(self, t, perm):
        perm = [p for p in perm if p <= t.n]
        c = canonical_code(t)
        assert canonical_code(t.relabel(perm)) == c
        assert canonical_code(Tournament.from_code(c)) == c

    @given(tournaments(max_n=9))
    def test_labeling_realizes_the_code(self, t):
        lab = canonical_labeling(t)
        assert t.relabel(lab).code == canonical_code(t)
        assert canonical_form(t).code == canonical_code(t)

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_hundred_relabelings_per_class(self, n):
        rng = random.Random(n)
        for code in enumerate_classes(n):
            t = Tournament.from_code(code)
            for _ in range(100):
                assert canonical_code(t.relabel(random_perm(n, rng))) == code

    def test_large_inputs_still_canonicalize(self):
        rng = random.Random(12)
        t = Tournament.from_bits(12, [rng.random() < 0.5 for _ in range(66)])
        assert canonical_code(t.relabel(random_perm(12, rng))) == canonical_code(t)


class TestIsomorphism:
    def test_reversal_of_transitive(self):
        t = Tournament.canonical(5)
        assert are_isomorphic(t, t.reversal())

    def test_different_score_classes(self):
        a = Tournament.from_code("4:000000")
        b = Tournament.from_code("4:001000")
        assert a.sorted_scores() == (0, 1, 2, 3) and b.sorted_scores() == (1, 1, 2, 2)
        assert not are_isomorphic(a, b)

    @given(tournaments(max_n=8), permutations_of(8))
    def test_relabeled_copy(self, t, perm):
        assert are_isomorphic(t, t.relabel([p for p in perm if p <= t.n]))

    def test_size_mismatch(self):
        with pytest.raises(TournamentError):
            are_isomorphic(Tournament.canonical(3), Tournament.canonical(4))


class TestEnumeration:
    def test_small_class_counts(self):
        assert len(enumerate_classes(3)) == 2
        assert len(enumerate_classes(4)) == 4

    def test_frozen_lists(self):
        assert enumerate_classes(4) == CLASSES_4
        assert enumerate_classes(5) == CLASSES_5
        assert len(set(CLASSES_5)) == 12

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_augmentation_matches_brute_force(self, n):
        assert enumerate_classes(n) == brute_force_classes(n) == oracle_classes(n)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_burnside_counts(self, n):
        assert burnside_class_count(n) == CLASS_COUNTS[n]

    @pytest.mark.parametrize("n", [6, 7])
    def test_augmentation_count(self, n):
        codes = enumerate_classes(n)
        assert len(codes) == len(set(codes)) == CLASS_COUNTS[n]
        assert all(canonical_code(Tournament.from_code(c)) == c for c in codes)

    def test_parallel_enumeration_agrees(self):
        assert enumerate_classes(7, jobs=2) == enumerate_classes(7)

    def test_out_of_range(self):
        with pytest.raises(TournamentError):
            enumerate_classes(9)
        with pytest.raises(TournamentError):
            enumerate_classes(1)

    def test_extend_adds_a_player(self):
        t = Tournament.canonical(3)
        u = extend(t, 0b101)
        assert u.n == 4
        assert u.subtournament([1, 2, 3]) == t
        # set bits mark the old players that beat the newcomer
        assert u.beats(1, 4) and u.beats(4, 2) and u.beats(3, 4)
