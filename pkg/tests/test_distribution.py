import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pmss.clustering import ClusteringOutcome
from pmss.core import DNA, Alphabet, CapacityError, MultiSequencesSets, Partition, ShortSequenceError, encode_all
from pmss.deposition import lap_deposit, sh_deposit
from pmss.distribution import (
    MotifContentFeatures,
    balance_clusters,
    dda_distribute,
    dda_star_distribute,
    distribute_by_content,
    extract_features,
    feature_matrix,
)
from pmss.exact import exhaustive_optimal
from pmss.metrics import cost_mm


def enc(texts, alphabet=DNA):
    return encode_all(texts, alphabet)


def within_set_spread(seqs, partition, q):
    """Sum over sets of pairwise L1 distances between member content vectors."""
    mss = MultiSequencesSets.from_partition(seqs, partition, DNA)
    total = 0.0
    for S in mss.sets:
        vecs = [np.bincount(s.symbols, minlength=q) / len(s) for s in S]
        total += sum(np.abs(a - b).sum() for a, b in itertools.combinations(vecs, 2))
    return total


def lap_cost(seqs, partition):
    mss = MultiSequencesSets.from_partition(seqs, partition, DNA)
    return cost_mm([lap_deposit(S) for S in mss.sets if len(S)])


@st.composite
def datasets(draw):
    M = draw(st.integers(1, 4))
    N = draw(st.integers(1, 5))
    n = draw(st.integers(1, M * N))
    texts = draw(st.lists(st.text(alphabet="ACGT", min_size=1, max_size=10), min_size=n, max_size=n))
    return enc(texts), M, N


class TestFeatures:
    def test_uniform_motif(self):
        assert extract_features(enc(["AAAA"])[0], 4, 4).values.tolist() == [1, 0, 0, 0]

    def test_single_motif(self):
        assert extract_features(enc(["ACAA"])[0], 4, 4).values.tolist() == [0.75, 0.25, 0, 0]

    def test_three_motifs(self):
        fv = extract_features(enc(["ACGT"])[0], 2, 4)
        assert fv.values.tolist() == [0.5, 0.5, 0, 0, 0, 0.5, 0.5, 0, 0, 0, 0.5, 0.5]
        assert fv.blocks.shape == (3, 4)

    def test_short_sequence(self):
        with pytest.raises(ShortSequenceError):
            extract_features(enc(["AC"])[0], 3, 4)

    @given(st.text(alphabet="ACGT", min_size=1, max_size=30), st.integers(1, 6))
    def test_blocks_sum_to_one(self, text, w):
        if len(text) < w:
            return
        fv = extract_features(enc([text])[0], w, 4)
        assert fv.blocks.shape == (len(text) - w + 1, 4)
        assert np.allclose(fv.blocks.sum(axis=1), 1.0, atol=1e-12)

    def test_unequal_lengths_get_a_common_dimension(self):
        X = feature_matrix(enc(["ACGTAC", "AC", "GGGGGGGG"]), 3, 4)
        assert X.shape[0] == 3 and np.isfinite(X).all()
        assert np.allclose(X.reshape(3, -1, 4).sum(axis=2), 1.0)

    def test_transformer(self, figure1):
        X = MotifContentFeatures().fit_transform(figure1)
        assert X.shape == (12, 4)


class TestContentDistribution:
    def test_figure1_spread_improves(self, figure1):
        seqs = enc(figure1)
        part = dda_distribute(seqs, 4, 3, DNA)
        identity = Partition({s.id: i // 3 for i, s in enumerate(seqs)}, 4, 3)
        assert part.sizes() == [3, 3, 3, 3]
        assert within_set_spread(seqs, part, 4) < within_set_spread(seqs, identity, 4)

    def test_identical_sequences(self):
        seqs = enc(["ACGT"] * 6)
        part = dda_distribute(seqs, 2, 3, DNA)
        assert sorted(part.sizes()) == [3, 3]

    def test_homogeneous_split(self):
        seqs = enc(["AAAA", "AAAA", "TTTT", "TTTT"])
        part = dda_distribute(seqs, 2, 2, DNA)
        assert sorted(map(sorted, part.groups())) == [["0", "1"], ["2", "3"]]
        mss = MultiSequencesSets.from_partition(seqs, part, DNA)
        assert cost_mm([sh_deposit(S) for S in mss.sets]) == exhaustive_optimal(seqs, 2, 2).cost

    def test_gc_bias_keys(self):
        seqs = enc(["GCGC", "ATAT", "GGCC", "TTAA"])
        part = dda_distribute(seqs, 2, 2, DNA, bias_symbols="GC")
        assert sorted(map(sorted, part.groups())) == [["0", "2"], ["1", "3"]]

    def test_capacity(self):
        with pytest.raises(CapacityError):
            dda_distribute(enc(["A"] * 5), 2, 2, DNA)

    @given(datasets())
    def test_valid_and_deterministic(self, data):
        seqs, M, N = data
        part = dda_distribute(seqs, M, N, DNA)
        assert set(part.assignment) == {s.id for s in seqs}
        assert max(part.sizes()) <= N
        assert part == dda_distribute(seqs, M, N, DNA)


def outcome(labels, M):
    return ClusteringOutcome({str(i): k for i, k in enumerate(labels)}, M, 0.0, 0, False, None)


class TestBalance:
    def test_balanced_is_identity(self):
        seqs = enc(["AC", "CA", "GG", "TT"])
        part = balance_clusters(outcome([0, 1, 0, 1], 2), seqs, 2, 4)
        assert part.assignment == {"0": 0, "1": 1, "2": 0, "3": 1}

    def test_published_outlier(self):
        seqs = enc(["ACAA", "AAGT", "AAGT", "CCCC"])
        part = balance_clusters(outcome([0, 0, 0, 1], 2), seqs, 2, 4)
        assert part.assignment["0"] == 1 and part.assignment["1"] == part.assignment["2"] == 0

    def test_only_candidate_inserted(self):
        seqs = enc(["AAAT", "AAAA", "CCCC", "GGGG"])
        part = balance_clusters(outcome([0, 1, 1, 1], 2), seqs, 2, 4)
        assert part.groups() == [["0", "1"], ["2", "3"]]

    @given(datasets(), st.data())
    @settings(max_examples=50)
    def test_respects_capacity(self, data, draw):
        seqs, M, N = data
        labels = draw.draw(st.lists(st.integers(0, M - 1), min_size=len(seqs), max_size=len(seqs)))
        part = balance_clusters(outcome(labels, M), seqs, N, 4)
        assert max(part.sizes()) <= N and set(part.assignment) == {s.id for s in seqs}
        # members of clusters that were never over-full stay put
        before = np.bincount(labels, minlength=M)
        for i, k in enumerate(labels):
            if before[k] <= N and part.assignment[str(i)] != k:
                assert before[part.assignment[str(i)]] < N


class TestDdaStar:
    def test_figure1_seeds(self, figure1):
        seqs = enc(figure1)
        costs = [lap_cost(seqs, dda_star_distribute(seqs, 4, 3, DNA, w=3, seed=s)) for s in range(10)]
        assert min(costs) <= 78

    def test_identical_sequences(self):
        seqs = enc(["ACGT"] * 6)
        part = dda_star_distribute(seqs, 2, 3, DNA)
        assert sorted(part.sizes()) == [3, 3]

    def test_homogeneous_split(self):
        seqs = enc(["AAAA", "TTTT", "AAAA", "TTTT"])
        part = dda_star_distribute(seqs, 2, 2, DNA)
        assert sorted(map(sorted, part.groups())) == [["0", "2"], ["1", "3"]]
        assert lap_cost(seqs, part) == exhaustive_optimal(seqs, 2, 2).cost

    def test_fewer_sequences_than_sets(self):
        part = dda_star_distribute(enc(["AC"]), 3, 2, DNA)
        assert part.sizes() == [1, 0, 0]

    @given(datasets(), st.integers(0, 3))
    @settings(max_examples=30, deadline=None)
    def test_valid_and_deterministic(self, data, seed):
        seqs, M, N = data
        part = dda_star_distribute(seqs, M, N, DNA, seed=seed)
        assert max(part.sizes()) <= N and set(part.assignment) == {s.id for s in seqs}
        assert part == dda_star_distribute(seqs, M, N, DNA, seed=seed)
