import math

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from pmss.core import BINARY, DNA, Alphabet, BudgetError, CapacityError, encode_all
from pmss.deposition import is_common_supersequence
from pmss.exact import (
    count_partitions,
    exhaustive_optimal,
    lower_bound,
    min_completion_cost,
    scs_dp,
    scs_length,
    witness_completion_cost,
)


def enc(texts, alphabet=DNA):
    return encode_all(texts, alphabet)


@st.composite
def small_instances(draw, max_total=12):
    q = draw(st.integers(1, 3))
    symbols = "ACG"[:q]
    texts = draw(st.lists(st.text(alphabet=symbols, min_size=1, max_size=5), min_size=1, max_size=4))
    while sum(map(len, texts)) > max_total:
        texts.pop()
    return texts or ["A"], Alphabet(symbols)


class TestScsDp:
    def test_two_sequences(self):
        assert scs_dp(enc(["AC", "CA"]))[0] == 3

    def test_single(self):
        length, witness = scs_dp(enc(["ACGT"]))
        assert length == 4 and DNA.decode(witness) == "ACGT"

    def test_duplicates_collapse(self):
        assert scs_dp(enc(["ACAA", "AAGT", "AAGT"]))[0] == scs_dp(enc(["ACAA", "AAGT"]))[0] == 6

    def test_budget(self):
        with pytest.raises(BudgetError, match="states"):
            scs_dp(enc(["ACGT", "GCAT", "TTTT"]), state_budget=10)

    def test_figure1_shorter_than_published(self, figure1):
        # the published single-set process sequence has 13 steps; the DP finds 10
        length, witness = scs_dp(enc(figure1), state_budget=60_000_000)
        assert length == 10
        assert is_common_supersequence(witness, enc(figure1))
        assert all(oracles.is_subseq(s, DNA.decode(witness)) for s in figure1)

    @given(small_instances())
    @settings(max_examples=60, deadline=None)
    def test_matches_brute_force(self, inst):
        texts, A = inst
        length, witness = scs_dp(enc(texts, A))
        expected = oracles.brute_scs(texts, "".join(A.symbols))
        assert length == len(expected) == scs_length(enc(texts, A))
        assert A.decode(witness) == expected


class TestCompletionCost:
    def test_exact_can_beat_shortest_witnesses(self):
        seqs = enc(["A", "A", "CA"], Alphabet("AC"))
        assert min_completion_cost(seqs) == 5
        assert witness_completion_cost(seqs) == 6

    def test_dda_set1(self):
        seqs = enc(["ACAA", "AAGT", "AAGT"])
        assert min_completion_cost(seqs) == 15
        assert witness_completion_cost(seqs) == 16

    @given(small_instances(max_total=7))
    @settings(max_examples=40, deadline=None)
    def test_exact_matches_brute_force(self, inst):
        texts, A = inst
        assert min_completion_cost(enc(texts, A)) == oracles.brute_min_sc(texts, "".join(A.symbols))


class TestExhaustive:
    def test_partition_count(self):
        assert count_partitions(4, 2, 2) == 3
        assert count_partitions(12, 4, 3) == math.factorial(12) // (6 ** 4 * 24)
        with pytest.raises(CapacityError):
            count_partitions(5, 2, 2)

    def test_homogeneous_split(self):
        seqs = enc(["AAAA", "TTTT", "AAAA", "TTTT"])
        res = exhaustive_optimal(seqs, 2, 2, "mm")
        assert res.cost == 16 and res.per_set_lengths == [4, 4]
        assert sorted(map(sorted, res.optimal_partition.groups())) == [["0", "2"], ["1", "3"]]

    def test_single_set_is_scs(self):
        seqs = enc(["ACGT", "GCAT", "ACAA"])
        assert exhaustive_optimal(seqs, 1, 3).cost == 3 * scs_dp(seqs)[0]

    def test_budget_reports_partition_count(self):
        seqs = enc(["A"] * 12)
        with pytest.raises(BudgetError, match=str(count_partitions(12, 4, 3))):
            exhaustive_optimal(seqs, 4, 3, partition_budget=10)

    @pytest.mark.parametrize("seed", range(6))
    def test_matches_brute_force_enumeration(self, seed):
        import numpy as np
        rng = np.random.default_rng(seed)
        texts = ["".join("01"[c] for c in rng.integers(0, 2, rng.integers(1, 5))) for _ in range(6)]
        best_mm = best_sc = None
        for blocks in oracles.set_partitions(range(6), 3):
            groups = [[texts[i] for i in b] for b in blocks]
            mm = sum(oracles.scs_len(g, "01") * len(g) for g in groups)
            sc = sum(oracles.brute_min_sc(g, "01") for g in groups)
            best_mm = mm if best_mm is None else min(best_mm, mm)
            best_sc = sc if best_sc is None else min(best_sc, sc)
        seqs = enc(texts, BINARY)
        assert exhaustive_optimal(seqs, 2, 3, "mm").cost == best_mm
        assert exhaustive_optimal(seqs, 2, 3, "sc").cost == best_sc
        assert exhaustive_optimal(seqs, 2, 3, "sc", sc_mode="witness").cost >= best_sc


class TestLowerBound:
    def test_identical_sequences(self):
        assert lower_bound(enc(["ACGT"] * 5), 3) == 12

    def test_single_sequence(self):
        assert lower_bound(enc(["GATTACA"]), 1) == 7

    def test_figure1(self, figure1):
        # max-count picks: A -> ACAA, C -> ACCC, G -> ACGT, T -> GTCT
        picks = ["ACAA", "ACCC", "ACGT", "GTCT"]
        assert lower_bound(enc(figure1), 4) == 4 * len(oracles.brute_scs(picks, "ACGT")) == 36

    def test_budget_drops_picks(self, figure1):
        full = lower_bound(enc(figure1), 4)
        reduced = lower_bound(enc(figure1), 4, state_budget=200)
        assert 4 * 4 <= reduced <= full
