"""Assigning sequences to M sets of capacity N.

Two families live here: the content-sorted round robin (DDA) and motif
feature clustering followed by outlier-pool balancing (DDA*).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .clustering import ClusteringOutcome, em_cluster
from .core import (
    Alphabet,
    CapacityError,
    ParameterError,
    Partition,
    Sequence,
    ShortSequenceError,
    content_matrix,
    padded_array,
)
from .deposition import sh_steps_batch

BIAS_THRESHOLD = 0.05


@dataclass(frozen=True)
class FeatureVector:
    values: np.ndarray
    window: int
    q: int

    @property
    def blocks(self) -> np.ndarray:
        return self.values.reshape(-1, self.q)


def extract_features(s: Sequence, w: int, q: int) -> FeatureVector:
    """Per-symbol content of every length-``w`` window, in position order."""
    if w < 1:
        raise ParameterError("window must be at least 1")
    if len(s) < w:
        raise ShortSequenceError(f"sequence {s.id!r} (length {len(s)}) is shorter than window {w}")
    onehot = np.eye(q)[np.asarray(s.symbols)]
    csum = np.vstack([np.zeros(q), np.cumsum(onehot, axis=0)])
    blocks = (csum[w:] - csum[:-w]) / w
    return FeatureVector(blocks.ravel(), w, q)


def feature_matrix(seqs, w: int, q: int) -> np.ndarray:
    """Fixed-dimension motif features for a batch of sequences.

    Equal lengths give the plain concatenated window contents. With unequal
    lengths every row keeps its first ``min_len - w + 1`` windows and gets the
    whole-sequence content appended; sequences shorter than ``w`` repeat their
    whole-sequence content in place of the windows.
    """
    lens = {len(s) for s in seqs}
    if len(lens) == 1 and next(iter(lens)) >= w:
        return np.vstack([extract_features(s, w, q).values for s in seqs])
    n_blocks = max(1, min(lens) - w + 1)
    whole = content_matrix(seqs, q)
    rows = []
    for s, c in zip(seqs, whole):
        if len(s) >= w:
            motifs = extract_features(s, w, q).blocks[:n_blocks]
        else:
            motifs = np.tile(c, (n_blocks, 1))
        rows.append(np.concatenate([motifs.ravel(), c]))
    return np.vstack(rows)


class MotifContentFeatures(TransformerMixin, BaseEstimator):
    """Sliding-window alphabet-content features.

    ``window=None`` uses the alphabet size, which is the usual choice.
    """

    def __init__(self, window=None, q=None):
        self.window = window
        self.q = q

    def fit(self, X, y=None):
        from .validation import check_sequences

        seqs, alphabet = check_sequences(X)
        self.q_ = self.q or alphabet.q
        self.window_ = self.window or self.q_
        self.n_features_out_ = feature_matrix(seqs, self.window_, self.q_).shape[1]
        return self

    def transform(self, X):
        from .validation import check_sequences

        if not hasattr(self, "window_"):
            raise ParameterError("MotifContentFeatures is not fitted")
        seqs, _ = check_sequences(X)
        return feature_matrix(seqs, self.window_, self.q_)


def _check_capacity(n, M, N):
    if M < 1 or N < 1:
        raise ParameterError(f"need M >= 1 and N >= 1, got M={M}, N={N}")
    if n > M * N:
        raise CapacityError(f"{n} sequences exceed the capacity of {M} sets of {N}")


def distribute_by_content(seqs, M: int, N: int, alphabet: Alphabet,
                          bias_symbols=None, bias_threshold: float = BIAS_THRESHOLD) -> Partition:
    """Content-sorted round robin.

    Set ``i`` is biased toward symbol ``i mod q`` and, in turn, takes the
    unassigned sequence richest in that symbol, as long as its content
    exceeds ``1/q + bias_threshold``. Whatever is left goes, in input order,
    to the non-full set whose pooled content vector is nearest in L1; an
    empty set counts as uniform content.

    With ``bias_symbols`` (e.g. ``"GC"``) the keys become the subset content
    and its complement, so sets alternate between rich and poor.
    """
    seqs = list(seqs)
    _check_capacity(len(seqs), M, N)
    q = alphabet.q
    contents = content_matrix(seqs, q)
    if bias_symbols:
        idx = sorted({alphabet.index(ch) for ch in bias_symbols})
        sub = contents[:, idx].sum(axis=1)
        keys = np.column_stack([sub, 1.0 - sub])
    else:
        keys = contents
    n_keys = keys.shape[1]
    level = 1.0 / n_keys + bias_threshold
    # stable descending order per key: ties keep input order
    order = [np.argsort(-keys[:, k], kind="stable") for k in range(n_keys)]
    cursor = [0] * n_keys
    assigned = np.full(len(seqs), -1)
    sizes = [0] * M

    def next_for(k):
        lst = order[k]
        while cursor[k] < len(lst) and assigned[lst[cursor[k]]] >= 0:
            cursor[k] += 1
        if cursor[k] < len(lst) and keys[lst[cursor[k]], k] > level:
            return int(lst[cursor[k]])
        return None

    progress = True
    while progress:
        progress = False
        for i in range(M):
            if sizes[i] >= N:
                continue
            j = next_for(i % n_keys)
            if j is None:
                continue
            assigned[j] = i
            sizes[i] += 1
            progress = True

    pooled = np.zeros((M, n_keys))
    lengths = np.zeros(M)
    for j in np.flatnonzero(assigned >= 0):
        L = len(seqs[j])
        pooled[assigned[j]] += keys[j] * L
        lengths[assigned[j]] += L
    uniform = np.full(n_keys, 1.0 / n_keys)
    for j in np.flatnonzero(assigned < 0):
        best, best_d = None, None
        for i in range(M):
            if sizes[i] >= N:
                continue
            centre = pooled[i] / lengths[i] if lengths[i] else uniform
            d = np.abs(centre - keys[j]).sum()
            if best is None or d < best_d - 1e-12:
                best, best_d = i, d
        assigned[j] = best
        sizes[best] += 1
        pooled[best] += keys[j] * len(seqs[j])
        lengths[best] += len(seqs[j])
    return Partition({s.id: int(k) for s, k in zip(seqs, assigned)}, M, N)


def dda_distribute(seqs, M: int, N: int, alphabet: Alphabet, bias_symbols=None) -> Partition:
    return distribute_by_content(seqs, M, N, alphabet, bias_symbols)


def _ranked(values, ties, count):
    """Indices of the ``count`` smallest ``values``; ``ties`` then position break ties."""
    order = np.lexsort((np.arange(len(values)), ties, values))
    return [int(i) for i in order[:count]]


def balance_clusters(outcome: ClusteringOutcome, seqs, N: int, q: int,
                     rounds: int = 4) -> Partition:
    """Resize clusters to at most ``N`` members through an outlier pool.

    Over-full clusters shed the members whose removal shortens the cluster's
    SH process sequence the most; under-full clusters then take, from the
    pool, the sequences that lengthen it the least. Ties go to the member with
    the lower density under the cluster (removal) or the higher density
    (insertion), then to input order.

    Candidates are scored in batches: each scoring round moves up to
    ``ceil(initial_excess / rounds)`` sequences, so an excess of at most
    ``rounds`` is handled strictly one move at a time.
    """
    seqs = list(seqs)
    M = outcome.n_clusters
    _check_capacity(len(seqs), M, N)
    pos = {s.id: i for i, s in enumerate(seqs)}
    if set(pos) != set(outcome.assignment):
        raise ParameterError("clustering outcome and sequences disagree on ids")
    arr, lens = padded_array(seqs, pad=0)
    if outcome.log_density is not None:
        order = list(outcome.assignment)
        dens = np.zeros((len(seqs), M))
        for row, sid in enumerate(order):
            dens[pos[sid]] = outcome.log_density[row]
    else:
        dens = np.zeros((len(seqs), M))
    clusters = [[] for _ in range(M)]
    for s in seqs:
        clusters[outcome.assignment[s.id]].append(pos[s.id])

    def steps_of(masks):
        return sh_steps_batch(arr, lens, masks, q)

    pool = []
    for k in range(M):
        members = clusters[k]
        if len(members) <= N:
            continue
        batch = math.ceil((len(members) - N) / rounds)
        while len(members) > N:
            masks = np.zeros((len(members), len(seqs)), dtype=bool)
            masks[:, members] = True
            masks[np.arange(len(members)), members] = False
            without = steps_of(masks)
            drop = _ranked(without, dens[members, k], min(batch, len(members) - N))
            gone = {members[i] for i in drop}
            pool.extend(members[i] for i in drop)
            members = [j for j in members if j not in gone]
        clusters[k] = members

    for k in range(M):
        members = clusters[k]
        if len(members) >= N or not pool:
            continue
        batch = math.ceil(min(N - len(members), len(pool)) / rounds)
        while len(members) < N and pool:
            masks = np.zeros((len(pool), len(seqs)), dtype=bool)
            masks[:, members] = True
            masks[np.arange(len(pool)), pool] = True
            with_it = steps_of(masks)
            take = _ranked(with_it, -dens[pool, k], min(batch, N - len(members)))
            chosen = {pool[i] for i in take}
            members = members + [pool[i] for i in sorted(take)]
            pool = [j for j in pool if j not in chosen]
        clusters[k] = members

    if pool:
        raise AssertionError("outlier pool not exhausted although capacity suffices")
    assignment = {}
    for k, members in enumerate(clusters):
        for j in members:
            assignment[seqs[j].id] = k
    return Partition({s.id: assignment[s.id] for s in seqs}, M, N)


def dda_star_distribute(seqs, M: int, N: int, alphabet: Alphabet, w: int | None = None,
                        seed=0, rounds: int = 4) -> Partition:
    """Motif features, EM clustering into ``M`` groups, then balancing."""
    seqs = list(seqs)
    _check_capacity(len(seqs), M, N)
    q = alphabet.q
    w = w or q
    if len(seqs) < M:
        # fewer points than clusters: every sequence gets its own set
        return Partition({s.id: i for i, s in enumerate(seqs)}, M, N)
    X = feature_matrix(seqs, w, q)
    outcome = em_cluster(X, M, seed=seed, ids=[s.id for s in seqs])
    return balance_clusters(outcome, seqs, N, q, rounds=rounds)
