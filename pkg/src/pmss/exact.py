"""Exact oracles for small instances.

States of the multi-sequence DP are tuples of per-sequence progress, packed
into one integer with mixed radix ``len_j + 1``. Transitions are applied to
whole arrays of packed states at once.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import (
    BudgetError,
    CapacityError,
    ParameterError,
    Partition,
    Sequence,
    SequencesSet,
)
from .deposition import is_subsequence

DEFAULT_STATE_BUDGET = 20_000_000
DEFAULT_PARTITION_BUDGET = 1_000_000


class _Lattice:
    def __init__(self, texts, state_budget=DEFAULT_STATE_BUDGET):
        self.texts = [tuple(t) for t in texts]
        self.lens = [len(t) for t in self.texts]
        self.size = math.prod(n + 1 for n in self.lens)
        if self.size > state_budget:
            raise BudgetError(
                f"DP needs {self.size} states, over the budget of {state_budget}"
            )
        strides, acc = [], 1
        for n in self.lens:
            strides.append(acc)
            acc *= n + 1
        self.strides = strides
        # symbol at each progress value; -1 once a sequence is finished
        self.tables = [np.array(list(t) + [-1], dtype=np.int64) for t in self.texts]
        self.goal = sum(n * s for n, s in zip(self.lens, strides))
        self.symbols = sorted({c for t in self.texts for c in t})

    def positions(self, codes, j):
        return (codes // self.strides[j]) % (self.lens[j] + 1)

    def step(self, codes, c):
        out = codes.copy()
        for j, table in enumerate(self.tables):
            hit = table[self.positions(codes, j)] == c
            out += hit * self.strides[j]
        return out

    def incomplete(self, codes, weights):
        w = np.zeros(len(codes), dtype=np.int64)
        for j, n in enumerate(self.lens):
            w += (self.positions(codes, j) < n) * weights[j]
        return w


def _reduce_for_length(texts):
    """Drop duplicates and sequences embedded in another; SCS is unchanged."""
    uniq = sorted(set(tuple(t) for t in texts), key=lambda t: (-len(t), t))
    kept = []
    for t in uniq:
        if not any(is_subsequence(t, k) for k in kept):
            kept.append(t)
    return kept


def _texts(seqs):
    return [tuple(s.symbols) if isinstance(s, Sequence) else tuple(s) for s in seqs]


def scs_dp(seqs, state_budget: int = DEFAULT_STATE_BUDGET):
    """Exact shortest common supersequence.

    Returns ``(length, witness)``; the witness takes the smallest symbol index
    at every step among those that stay on a shortest path.
    """
    texts = _reduce_for_length(_texts(seqs))
    if not texts:
        return 0, ()
    lat = _Lattice(texts, state_budget)
    seen = np.zeros(lat.size, dtype=bool)
    layers = [np.array([0], dtype=np.int64)]
    seen[0] = True
    while not seen[lat.goal]:
        cur = layers[-1]
        nxt = np.unique(np.concatenate([lat.step(cur, c) for c in lat.symbols]))
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        layers.append(nxt)
    length = len(layers) - 1
    # states from which the goal is reachable in exactly the remaining steps
    good = [None] * (length + 1)
    good[length] = np.array([lat.goal], dtype=np.int64)
    for d in range(length - 1, -1, -1):
        mask = np.zeros(len(layers[d]), dtype=bool)
        for c in lat.symbols:
            mask |= np.isin(lat.step(layers[d], c), good[d + 1])
        good[d] = layers[d][mask]
    witness = []
    state = np.array([0], dtype=np.int64)
    for d in range(length):
        for c in lat.symbols:
            nxt = lat.step(state, c)
            if np.isin(nxt, good[d + 1])[0]:
                witness.append(c)
                state = nxt
                break
    return length, tuple(witness)


def scs_length(seqs, state_budget: int = DEFAULT_STATE_BUDGET) -> int:
    return _scs_length_cached(tuple(sorted(_reduce_for_length(_texts(seqs)))), state_budget)


@lru_cache(maxsize=65536)
def _scs_length_cached(texts, state_budget):
    if not texts:
        return 0
    lat = _Lattice(texts, state_budget)
    seen = np.zeros(lat.size, dtype=bool)
    cur = np.array([0], dtype=np.int64)
    seen[0] = True
    depth = 0
    while not seen[lat.goal]:
        nxt = np.unique(np.concatenate([lat.step(cur, c) for c in lat.symbols]))
        cur = nxt[~seen[nxt]]
        seen[cur] = True
        depth += 1
    return depth


def min_completion_cost(seqs, state_budget: int = DEFAULT_STATE_BUDGET) -> int:
    """Minimum of sum_j C(s_j) over every common supersequence of ``seqs``.

    Each step costs the number of sequences still incomplete before it, so
    the problem is a shortest path with positive integer edge weights, solved
    with a bucket queue.
    """
    texts = _texts(seqs)
    if not texts:
        return 0
    counts = {}
    for t in texts:
        counts[t] = counts.get(t, 0) + 1
    key = tuple(sorted(counts.items()))
    return _min_completion_cached(key, state_budget)


@lru_cache(maxsize=65536)
def _min_completion_cached(key, state_budget):
    texts = [t for t, _ in key]
    weights = [w for _, w in key]
    lat = _Lattice(texts, state_budget)
    inf = np.iinfo(np.int64).max
    dist = np.full(lat.size, inf, dtype=np.int64)
    dist[0] = 0
    buckets = {0: [np.array([0], dtype=np.int64)]}
    cost = 0
    while True:
        while cost not in buckets:
            cost += 1
        states = np.unique(np.concatenate(buckets.pop(cost)))
        states = states[dist[states] == cost]
        if dist[lat.goal] == cost:
            return int(cost)
        if len(states) == 0:
            continue
        w = lat.incomplete(states, weights)
        for c in lat.symbols:
            nxt = lat.step(states, c)
            moved = nxt != states
            nxt, nc = nxt[moved], cost + w[moved]
            better = nc < dist[nxt]
            nxt, nc = nxt[better], nc[better]
            if len(nxt) == 0:
                continue
            np.minimum.at(dist, nxt, nc)
            for value in np.unique(nc):
                buckets.setdefault(int(value), []).append(nxt[nc == value])


def witness_completion_cost(seqs, state_budget: int = DEFAULT_STATE_BUDGET) -> int:
    """Minimum of sum_j C(s_j) over shortest common supersequences only."""
    texts = _texts(seqs)
    if not texts:
        return 0
    counts = {}
    for t in texts:
        counts[t] = counts.get(t, 0) + 1
    items = sorted(counts.items())
    texts = [t for t, _ in items]
    weights = [w for _, w in items]
    lat = _Lattice(texts, state_budget)
    inf = np.iinfo(np.int64).max
    seen = np.zeros(lat.size, dtype=bool)
    seen[0] = True
    cur, cur_cost = np.array([0], dtype=np.int64), np.array([0], dtype=np.int64)
    while not seen[lat.goal]:
        w = lat.incomplete(cur, weights)
        cand = np.concatenate([lat.step(cur, c) for c in lat.symbols])
        cost = np.tile(cur_cost + w, len(lat.symbols))
        keep = ~seen[cand]
        cand, cost = cand[keep], cost[keep]
        nxt = np.unique(cand)
        best = np.full(len(nxt), inf, dtype=np.int64)
        np.minimum.at(best, np.searchsorted(nxt, cand), cost)
        seen[nxt] = True
        cur, cur_cost = nxt, best
    return int(cur_cost[np.searchsorted(cur, lat.goal)])


@dataclass(frozen=True)
class ExactResult:
    optimal_partition: Partition
    per_set_lengths: list
    cost: int
    cost_kind: str
    per_set_costs: list


def count_partitions(n_items: int, M: int, N: int) -> int:
    """Unordered partitions of ``M*N`` labelled items into ``M`` blocks of ``N``."""
    if n_items != M * N:
        raise CapacityError(f"{n_items} sequences cannot fill {M} sets of {N}")
    return math.factorial(n_items) // (math.factorial(N) ** M * math.factorial(M))


def _partitions(items, N):
    """Yield unordered partitions of ``items`` into blocks of size ``N``.

    The first remaining item always opens the next block, so each unordered
    partition appears once.
    """
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for others in itertools.combinations(range(len(rest)), N - 1):
        block = [first] + [rest[i] for i in others]
        chosen = set(others)
        remaining = [x for i, x in enumerate(rest) if i not in chosen]
        for tail in _partitions(remaining, N):
            yield [block] + tail


def _set_cost(texts, kind, sc_mode, state_budget):
    if kind == "mm":
        return scs_length(texts, state_budget) * len(texts)
    if sc_mode == "witness":
        return witness_completion_cost(texts, state_budget)
    return min_completion_cost(texts, state_budget)


def exhaustive_optimal(seqs, M: int, N: int, cost: str = "mm", sc_mode: str = "exact",
                       state_budget: int = DEFAULT_STATE_BUDGET,
                       partition_budget: int = DEFAULT_PARTITION_BUDGET) -> ExactResult:
    """Minimum-cost partition of ``M*N`` sequences into ``M`` sets of ``N``.

    ``cost`` is ``"mm"`` (sum of L_i * N_i) or ``"sc"`` (sum of completion
    steps). For ``"sc"``, ``sc_mode="exact"`` minimises over all common
    supersequences of each set and ``"witness"`` over shortest ones only.
    Partitions that differ only by swapping identical sequences are scored once.
    """
    if cost not in ("mm", "sc"):
        raise ParameterError(f"unknown cost kind {cost!r}")
    if sc_mode not in ("exact", "witness"):
        raise ParameterError(f"unknown sc_mode {sc_mode!r}")
    seqs = list(seqs)
    total = count_partitions(len(seqs), M, N)
    if total > partition_budget:
        raise BudgetError(
            f"exhaustive search needs {total} partitions, over the budget of {partition_budget}"
        )
    texts = _texts(seqs)
    best, best_key = None, None
    scored = set()
    for blocks in _partitions(list(range(len(seqs))), N):
        canon = tuple(sorted(tuple(sorted(texts[i] for i in b)) for b in blocks))
        if canon in scored:
            continue
        scored.add(canon)
        costs = [_set_cost([texts[i] for i in b], cost, sc_mode, state_budget) for b in blocks]
        value = sum(costs)
        if best is None or value < best:
            best, best_key = value, (blocks, costs)
    blocks, costs = best_key
    partition = Partition.from_groups([[seqs[i].id for i in b] for b in blocks], N)
    lengths = [scs_length([texts[i] for i in b], state_budget) for b in blocks]
    return ExactResult(partition, lengths, int(best), cost, costs)


def lower_bound(seqs, M: int, q: int | None = None,
                state_budget: int = DEFAULT_STATE_BUDGET) -> int:
    """M times the exact SCS length of per-symbol max-count representatives.

    For every symbol the sequence with the most occurrences is picked (first
    in input order on ties). When the DP is over budget, picks are dropped in
    order of increasing max-count until it fits.
    """
    seqs = list(seqs)
    if not seqs:
        raise ParameterError("lower bound of an empty dataset is undefined")
    texts = _texts(seqs)
    if q is None:
        q = max(max(t) for t in texts) + 1
    picks = {}
    for c in range(q):
        counts = [t.count(c) for t in texts]
        best = max(counts)
        if best == 0:
            continue
        i = counts.index(best)
        picks[i] = max(picks.get(i, 0), best)
    chosen = sorted(picks, key=lambda i: (-picks[i], i))
    while chosen:
        try:
            return scs_length([texts[i] for i in chosen], state_budget) * M
        except BudgetError:
            chosen.pop()
    raise AssertionError("unreachable: a single sequence always fits the budget")
