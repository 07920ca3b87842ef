from itertools import combinations, product

import pytest
from hypothesis import given, settings

from flagsymp import CodeParseError, Tournament, TournamentError, TripleClass, build_tournament
from flagsymp.families import family_tournament
from flagsymp.tournament import FOUR_CLASSES

from helpers import arc_table, oracle_cycle_count, oracle_hamiltonian, permutations_of, tournaments

THREE_CYCLE = Tournament.from_arcs(3, [(1, 2), (2, 3), (3, 1)])


def all_tournaments(n):
    m = n * (n - 1) // 2
    for bits in product((False, True), repeat=m):
        yield Tournament.from_bits(n, bits)


class TestEncoding:
    def test_canonical_three(self):
        t = build_tournament("3:111")
        assert set(t.arcs()) == {(1, 2), (1, 3), (2, 3)}
        assert t == Tournament.canonical(3)

    def test_110_decodes_to_transitive_with_flipped_pair(self):
        t = build_tournament("3:110")
        assert set(t.arcs()) == {(1, 2), (1, 3), (3, 2)}
        assert t.score_vector() == (2, 0, 1)
        assert t.is_transitive()

    def test_101_is_a_three_cycle(self):
        t = build_tournament("3:101")
        assert set(t.arcs()) == {(1, 2), (3, 1), (2, 3)}
        assert t.three_cycle_count() == 1

    @pytest.mark.parametrize(
        "code, index",
        [("4:11011", 5), ("4:1101111", 6), ("3:1a1", 1), ("3:11", 2)],
    )
    def test_parse_errors_name_the_index(self, code, index):
        with pytest.raises(CodeParseError) as exc:
            build_tournament(code)
        assert exc.value.index == index

    @pytest.mark.parametrize("code", ["111", "x:111", "1:", "17:" + "0" * 136, ""])
    def test_malformed_header(self, code):
        with pytest.raises(TournamentError):
            build_tournament(code)

    def test_parse_error_is_a_value_error(self):
        with pytest.raises(ValueError):
            build_tournament("4:11011")

    @given(tournaments(max_n=10))
    def test_round_trip(self, t):
        assert Tournament.from_code(t.code) == t
        assert Tournament.from_arcs(t.n, t.arcs()) == t

    def test_arc_list_must_be_complete(self):
        with pytest.raises(TournamentError):
            Tournament.from_arcs(3, [(1, 2), (2, 3)])
        with pytest.raises(TournamentError):
            Tournament.from_arcs(3, [(1, 2), (2, 1), (2, 3), (1, 3)])


class TestSkewness:
    @given(tournaments())
    def test_eps_skew(self, t):
        for i in range(1, t.n + 1):
            assert t.eps(i, i) == 0
            for j in range(1, t.n + 1):
                if i != j:
                    assert t.eps(i, j) + t.eps(j, i) == 0
                    assert abs(t.eps(i, j)) == 1

    def test_player_bounds(self):
        t = Tournament.canonical(3)
        with pytest.raises(TournamentError):
            t.beats(0, 2)
        with pytest.raises(TournamentError):
            t.eps(1, 4)


class TestScores:
    def test_canonical_four(self):
        t = Tournament.canonical(4)
        assert t.score_vector() == (3, 2, 1, 0)
        assert t.sorted_scores() == (0, 1, 2, 3)

    def test_three_cycle(self):
        assert THREE_CYCLE.score_vector() == (1, 1, 1)

    def test_family_five_one(self):
        assert family_tournament(5, 1).sorted_scores() == (1, 1, 2, 3, 3)

    @given(tournaments())
    def test_score_sum(self, t):
        assert sum(t.score_vector()) == t.n * (t.n - 1) // 2

    @given(tournaments(min_n=3), permutations_of(7))
    def test_sorted_scores_are_invariant(self, t, perm):
        perm = [p for p in perm if p <= t.n]
        assert t.relabel(perm).sorted_scores() == t.sorted_scores()


class TestTriples:
    def test_examples(self):
        assert Tournament.canonical(3).triple_class(1, 2, 3) is TripleClass.TRANSITIVE
        assert THREE_CYCLE.triple_class(1, 2, 3) is TripleClass.CYCLIC
        assert family_tournament(4, 1).triple_class(1, 2, 4) is TripleClass.CYCLIC

    def test_triples_must_increase(self):
        with pytest.raises(TournamentError):
            Tournament.canonical(4).triple_class(2, 1, 3)

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_cycle_count_identity_exhaustive(self, n):
        for t in all_tournaments(n):
            assert t.three_cycle_count() == oracle_cycle_count(t) == len(t.cyclic_triples())

    def test_cycle_count_examples(self):
        assert Tournament.canonical(7).three_cycle_count() == 0
        assert THREE_CYCLE.three_cycle_count() == 1
        strong = next(t for t in all_tournaments(4) if t.sorted_scores() == (1, 1, 2, 2))
        assert strong.three_cycle_count() == 2

    @given(tournaments(min_n=3))
    def test_triples_partition(self, t):
        cyc, tra = set(t.cyclic_triples()), set(t.transitive_triples())
        assert not cyc & tra
        assert len(cyc) + len(tra) == len(list(combinations(range(t.n), 3)))

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_transitive_iff_sorted_scores(self, n):
        for t in all_tournaments(n):
            assert t.is_transitive() == (t.sorted_scores() == tuple(range(n)))

    def test_transitivity_examples(self):
        assert Tournament.canonical(6).is_transitive()
        assert not THREE_CYCLE.is_transitive()
        for n in range(4, 9):
            for k in range(1, n - 2):
                assert not family_tournament(n, k).is_transitive()


class TestSubtournament:
    def test_restriction_of_canonical(self):
        assert Tournament.canonical(5).subtournament([2, 3, 5]) == Tournament.canonical(3)

    def test_family_restriction_is_a_cycle(self):
        sub = family_tournament(5, 1).subtournament([1, 2, 5])
        assert sub.three_cycle_count() == 1
        assert set(sub.arcs()) == {(1, 2), (2, 3), (3, 1)}

    @pytest.mark.parametrize("players", [[1, 1, 2], [3, 2], [1], [0, 1], [1, 6]])
    def test_bad_subsets(self, players):
        with pytest.raises(TournamentError):
            Tournament.canonical(5).subtournament(players)

    @given(tournaments(min_n=3))
    def test_subtournament_keeps_arcs(self, t):
        players = list(range(1, t.n + 1, 2)) or [1, 2]
        if len(players) < 2:
            return
        sub = t.subtournament(players)
        for a, b in combinations(range(1, len(players) + 1), 2):
            assert sub.beats(a, b) == t.beats(players[a - 1], players[b - 1])


class TestRelabel:
    @given(tournaments(), permutations_of(7))
    def test_relabel_moves_arcs(self, t, perm):
        perm = [p for p in perm if p <= t.n]
        r = t.relabel(perm)
        for i, j in t.arcs():
            assert r.beats(perm[i - 1], perm[j - 1])

    def test_relabel_rejects_non_permutations(self):
        with pytest.raises(TournamentError):
            Tournament.canonical(3).relabel([1, 1, 2])

    def test_reversal(self):
        rev = Tournament.canonical(5).reversal()
        assert rev.score_vector() == (0, 1, 2, 3, 4)
        assert rev.reversal() == Tournament.canonical(5)


class TestHamiltonian:
    def test_three_cycle_certificate(self):
        assert THREE_CYCLE.hamiltonian_cycle() == (1, 2, 3, 1)

    def test_canonical_is_not(self):
        for n in range(3, 10):
            assert Tournament.canonical(n).hamiltonian_cycle() is None

    def test_family_six_two(self):
        cyc = family_tournament(6, 2).hamiltonian_cycle()
        assert cyc is not None

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_against_brute_force_exhaustive(self, n):
        for t in all_tournaments(n):
            assert t.is_hamiltonian() == oracle_hamiltonian(t) == t.is_strong()

    @settings(max_examples=200)
    @given(tournaments(min_n=3, max_n=12))
    def test_certificate_is_a_cycle(self, t):
        cyc = t.hamiltonian_cycle()
        if cyc is None:
            assert not t.is_strong()
            return
        assert cyc[0] == cyc[-1] == 1
        assert sorted(cyc[:-1]) == list(range(1, t.n + 1))
        assert all(t.beats(a, b) for a, b in zip(cyc, cyc[1:]))

    def test_too_small(self):
        with pytest.raises(TournamentError):
            Tournament.canonical(2).hamiltonian_cycle()


class TestParabolic:
    def test_examples(self):
        assert THREE_CYCLE.is_parabolic()
        assert family_tournament(4, 1).is_parabolic()
        assert not Tournament.canonical(4).is_parabolic()

    def test_parity_rule_after_relabeling(self):
        for n in range(3, 8):
            base = Tournament.parabolic(n)
            a = arc_table(base)
            for i in range(n):
                for j in range(i + 1, n):
                    assert a[i][j] == ((j - i) % 2 == 1)
            assert base.relabel(list(range(n, 0, -1))).is_parabolic()


class TestFourProfile:
    def test_four_class_table_covers_every_4_tournament(self):
        seen = {t.sorted_scores() for t in all_tournaments(4)}
        assert seen == set(FOUR_CLASSES)

    def test_canonical_five(self):
        prof = Tournament.canonical(5).four_subtournament_profile()
        assert prof.counts["transitive"] == 5
        assert prof.witness is None and not prof.forbidden

    def test_forbidden_source(self):
        t = next(t for t in all_tournaments(4) if t.sorted_scores() == (1, 1, 1, 3))
        prof = t.four_subtournament_profile()
        assert prof.forbidden and prof.witness == (1, 2, 3, 4)

    def test_forbidden_sink(self):
        t = next(t for t in all_tournaments(4) if t.sorted_scores() == (0, 2, 2, 2))
        assert t.four_subtournament_profile().forbidden

    def test_family_six_two_has_none(self):
        prof = family_tournament(6, 2).four_subtournament_profile()
        assert not prof.forbidden
        assert sum(prof.counts.values()) == 15

    def test_forbidden_flag_matches_subset_scan(self):
        for n in (4, 5):
            for t in all_tournaments(n):
                prof = t.four_subtournament_profile()
                expected = any(
                    t.subtournament(q).sorted_scores() in {(1, 1, 1, 3), (0, 2, 2, 2)}
                    for q in combinations(range(1, n + 1), 4)
                )
                assert prof.forbidden == expected

    def test_needs_four_players(self):
        with pytest.raises(TournamentError):
            THREE_CYCLE.four_subtournament_profile()
