import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from botdna.classify import (
    AffinityParams,
    ScoringScheme,
    align_global,
    classify_species,
    merge_retention,
    similarity,
    species_affinity,
)
from botdna.clustering import Species
from botdna.seeding import BOT_GROUP, GENUINE_GROUP, InitialGroups, SeedGroup

from oracles import align_score_reference, enumerate_alignments, score_alignment

DNA_TEXT = st.text(alphabet="ATC", max_size=12)


class TestAlignGlobal:
    def test_identity_alignment(self):
        result = align_global("ACAT", "ACAT")
        assert result.score == 8
        assert result.identity == 1.0
        assert result.aligned_a == result.aligned_b == "ACAT"

    def test_gap_alignment(self):
        result = align_global("ACAT", "AAT")
        assert result.score == 4
        assert result.matches == 3
        assert result.aligned_length == 4
        assert result.identity == 0.75

    def test_empty_vs_nonempty(self):
        result = align_global("", "AT")
        assert result.score == -4
        assert result.identity == 0.0
        assert result.aligned_a == "--"

    def test_both_empty(self):
        result = align_global("", "")
        assert result.score == 0
        assert result.aligned_length == 0
        assert result.identity == 0.0

    def test_score_matches_reference_dp(self):
        rng = random.Random(314)
        scoring = ScoringScheme()
        for _ in range(300):
            a = "".join(rng.choice("ATC") for _ in range(rng.randint(0, 8)))
            b = "".join(rng.choice("ATC") for _ in range(rng.randint(0, 8)))
            expected = align_score_reference(a, b, scoring.match, scoring.mismatch, scoring.gap)
            result = align_global(a, b, scoring)
            assert result.score == expected, (a, b)
            # the traceback must actually realize the optimal score
            assert (
                score_alignment(result.aligned_a, result.aligned_b, scoring.match, scoring.mismatch, scoring.gap)
                == expected
            )

    def test_exhaustive_tiny_strings(self):
        scoring = ScoringScheme()
        strings = ["".join(p) for n in range(0, 4) for p in itertools.product("ATC", repeat=n)]
        for a in strings:
            for b in strings:
                best = max(
                    score_alignment(ra, rb, scoring.match, scoring.mismatch, scoring.gap)
                    for ra, rb in enumerate_alignments(a, b)
                )
                assert align_global(a, b, scoring).score == best, (a, b)

    def test_alternative_scoring(self):
        scoring = ScoringScheme(match=1, mismatch=0, gap=-1)
        rng = random.Random(2718)
        for _ in range(100):
            a = "".join(rng.choice("ATC") for _ in range(rng.randint(0, 8)))
            b = "".join(rng.choice("ATC") for _ in range(rng.randint(0, 8)))
            expected = align_score_reference(a, b, 1, 0, -1)
            assert align_global(a, b, scoring).score == expected

    @given(DNA_TEXT, DNA_TEXT)
    def test_symmetry(self, a, b):
        assert align_global(a, b).score == align_global(b, a).score

    @given(DNA_TEXT, DNA_TEXT)
    def test_aligned_length_bound(self, a, b):
        result = align_global(a, b)
        assert result.aligned_length >= max(len(a), len(b))
        assert result.aligned_length <= len(a) + len(b)

    def test_scoring_invariants(self):
        with pytest.raises(ValueError):
            ScoringScheme(match=0)
        with pytest.raises(ValueError):
            ScoringScheme(mismatch=1)
        with pytest.raises(ValueError):
            ScoringScheme(gap=0)


class TestSimilarity:
    def test_self_similarity(self):
        assert similarity("ACAT", "ACAT") == 1.0

    def test_disjoint(self):
        assert similarity("AAA", "TTT") == 0.0

    def test_gap_case(self):
        assert similarity("ACAT", "AAT") == 0.75

    def test_both_empty_is_zero(self):
        assert similarity("", "") == 0.0

    @given(DNA_TEXT, DNA_TEXT)
    def test_bounds(self, a, b):
        assert 0.0 <= similarity(a, b) <= 1.0

    @given(st.text(alphabet="ATC", min_size=1, max_size=12))
    def test_self_similarity_property(self, x):
        assert similarity(x, x) == 1.0


def group_of(members_to_dna, lcs, species_ids=frozenset({0})):
    return SeedGroup(species_ids, frozenset(members_to_dna), lcs)


class TestMergeRetention:
    def test_core_fully_preserved(self):
        dna = {"g1": "TTATATATCC", "g2": "CCATATATTT", "s1": "CATATATAC"}
        group = group_of({"g1", "g2"}, "ATATAT")
        species = Species(5, frozenset({"s1"}), "ATATAT", 2)
        assert merge_retention(species, group, dna) == 1.0

    def test_empty_merged_lcs(self):
        dna = {"g1": "AAAA", "s1": "TTTT"}
        group = group_of({"g1"}, "AAAA")
        species = Species(5, frozenset({"s1"}), "TTTT", 2)
        assert merge_retention(species, group, dna) == 0.0

    def test_ratio(self):
        dna = {"g1": "ATATAT", "g2": "ATATAT", "s1": "CCATATCC"}
        group = group_of({"g1", "g2"}, "ATATAT")
        species = Species(5, frozenset({"s1"}), "ATAT", 2)
        assert merge_retention(species, group, dna) == pytest.approx(4 / 6)

    def test_empty_group_lcs_gives_zero(self):
        group = group_of({"g1"}, "")
        species = Species(5, frozenset({"s1"}), "AT", 2)
        assert merge_retention(species, group, {"g1": "A", "s1": "AT"}) == 0.0


class TestSpeciesAffinity:
    def test_formula_arithmetic(self):
        # similarity 1, retention 1, weight 0.5, beta 0.6 -> 0.8
        dna = {"g1": "ATAT", "s1": "ATAT"}
        group = group_of({"g1"}, "ATAT")
        species = Species(5, frozenset({"s1"}), "ATAT", 2)
        affinity = species_affinity(species, group, total_grouped=2, dna_by_id=dna)
        assert affinity == pytest.approx(0.6 * 1.0 + 0.4 * 1.0 * 0.5)

    def test_zero_similarity_zero_retention(self):
        dna = {"g1": "AAAA", "s1": "TTTT"}
        group = group_of({"g1"}, "AAAA")
        species = Species(5, frozenset({"s1"}), "TTTT", 2)
        assert species_affinity(species, group, 2, dna) == 0.0

    def test_empty_group_affinity_zero(self):
        group = SeedGroup(frozenset(), frozenset(), "")
        species = Species(5, frozenset({"s1"}), "ATAT", 2)
        assert species_affinity(species, group, 4, {"s1": "ATAT"}) == 0.0


class TestClassifySpecies:
    def _groups(self, dna):
        bot = group_of({"b1", "b2"}, "ATCATCATC", frozenset({0}))
        genuine = group_of({"g1", "g2"}, "TT", frozenset({1}))
        return InitialGroups(bot, genuine, (2, 3))

    def test_bot_affinity_wins(self):
        dna = {
            "b1": "CATCATCATCA",
            "b2": "TATCATCATCT",
            "g1": "CCTTACC",
            "g2": "AATTCAA",
            "s1": "ATCATCATC",
        }
        groups = self._groups(dna)
        species = Species(2, frozenset({"s1"}), "ATCATCATC", 2)
        (assignment,) = classify_species([species], groups, dna)
        assert assignment.assigned == BOT_GROUP
        assert assignment.affinity_bot > assignment.affinity_genuine

    def test_tie_resolves_to_genuine(self):
        # both groups empty of signal: affinities are exactly 0 each
        bot = SeedGroup(frozenset({0}), frozenset({"b1"}), "AAAA")
        genuine = SeedGroup(frozenset({1}), frozenset({"g1"}), "CCCC")
        groups = InitialGroups(bot, genuine, (2,))
        dna = {"b1": "AAAA", "g1": "CCCC", "s1": "TTTT"}
        species = Species(2, frozenset({"s1"}), "TTTT", 2)
        (assignment,) = classify_species([species], groups, dna)
        assert assignment.affinity_bot == assignment.affinity_genuine == 0.0
        assert assignment.tie
        assert assignment.assigned == GENUINE_GROUP

    def test_order_invariance(self):
        dna = {
            "b1": "ATCATCATCAT",
            "b2": "TATCATCATCT",
            "g1": "CCTTACC",
            "g2": "AATTCAA",
            "s1": "ATCATCATC",
            "s2": "TTAACC",
        }
        groups = self._groups(dna)
        sp1 = Species(2, frozenset({"s1"}), "ATCATCATC", 2)
        sp2 = Species(3, frozenset({"s2"}), "TTAACC", 2)
        forward = classify_species([sp1, sp2], groups, dna)
        backward = classify_species([sp2, sp1], groups, dna)
        assert forward[0] == backward[1]
        assert forward[1] == backward[0]

    def test_exact_core_absorption(self):
        # species LCS equals the bot group LCS, every member carries it,
        # and it shares nothing with the genuine group -> must go to bots
        core = "ACACACACACACACACAC"
        dna = {
            "b1": f"C{core}C",
            "b2": f"A{core}A",
            "g1": "T" * 8,
            "g2": "TTTTTTT",
            "s1": f"A{core}A",
            "s2": f"C{core}T",
        }
        bot = group_of({"b1", "b2"}, core, frozenset({0}))
        genuine = group_of({"g1", "g2"}, "TTTTTTT", frozenset({1}))
        groups = InitialGroups(bot, genuine, (2,))
        species = Species(2, frozenset({"s1", "s2"}), core, 2)
        assert similarity(core, genuine.lcs) == 0.0
        (assignment,) = classify_species([species], groups, dna)
        assert assignment.assigned == BOT_GROUP

    def test_affinity_params_validation(self):
        with pytest.raises(ValueError):
            AffinityParams(beta=1.5)
