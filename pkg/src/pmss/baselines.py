"""Greedy-A (pairwise supersequence agglomeration) and Greedy-D (peel off
the earliest finishers of a joint SH run)."""
from __future__ import annotations

from dataclasses import dataclass

from .core import Alphabet, CapacityError, ParameterError, Partition, Sequence, SequencesSet
from .deposition import DepositionResult, _result, lap_reduce, sh_deposit

GREEDY_A_LIMIT = 2000


def pairwise_scs(a, b) -> tuple[int, ...]:
    """Exact shortest common supersequence of two sequences.

    On ties the symbol of ``a`` is emitted first.
    """
    a, b = tuple(a), tuple(b)
    n, m = len(a), len(b)
    # dp[i][j]: SCS length of a[i:] and b[j:]
    dp = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n, -1, -1):
        row, below = dp[i], dp[i + 1] if i < n else None
        for j in range(m, -1, -1):
            if i == n:
                row[j] = m - j
            elif j == m:
                row[j] = n - i
            elif a[i] == b[j]:
                row[j] = below[j + 1] + 1
            else:
                row[j] = min(below[j], row[j + 1]) + 1
    out = []
    i = j = 0
    while i < n or j < m:
        if i == n:
            out.append(b[j]); j += 1
        elif j == m:
            out.append(a[i]); i += 1
        elif a[i] == b[j]:
            out.append(a[i]); i += 1; j += 1
        elif dp[i + 1][j] <= dp[i][j + 1]:
            out.append(a[i]); i += 1
        else:
            out.append(b[j]); j += 1
    return tuple(out)


@dataclass(frozen=True)
class MergeNode:
    supersequence: tuple
    members: tuple  # input positions, ascending


def _check_full(seqs, M, N):
    if M < 1 or N < 1:
        raise ParameterError(f"need M >= 1 and N >= 1, got M={M}, N={N}")
    if len(seqs) != M * N:
        raise CapacityError(f"{len(seqs)} sequences do not fill {M} sets of {N} exactly")


def greedy_a(seqs, M: int, N: int, alphabet: Alphabet):
    """Agglomerate the pool pair with the shortest pairwise SCS until a node
    covers ``N`` members, emit its first ``N`` as a set, and return any
    excess members to the pool as singletons.

    Returns ``(partition, results)`` with one :class:`DepositionResult` per set.
    """
    seqs = list(seqs)
    _check_full(seqs, M, N)
    if len(seqs) > GREEDY_A_LIMIT:
        raise CapacityError(
            f"Greedy-A is quadratic; refusing {len(seqs)} sequences (limit {GREEDY_A_LIMIT})"
        )
    pool = [MergeNode(s.symbols, (i,)) for i, s in enumerate(seqs)]
    pair_cache = {}

    def merged(x: MergeNode, y: MergeNode):
        key = (x, y)
        if key not in pair_cache:
            pair_cache[key] = pairwise_scs(x.supersequence, y.supersequence)
        return pair_cache[key]

    groups, results = [], []

    def emit(node: MergeNode):
        take = node.members[:N]
        S = SequencesSet(tuple(seqs[i] for i in take), alphabet, N)
        reduced = lap_reduce(node.supersequence, S)
        groups.append([seqs[i].id for i in take])
        results.append(_result(reduced.symbols, S))
        excess = [MergeNode(seqs[i].symbols, (i,)) for i in node.members[N:]]
        return excess

    while len(groups) < M:
        ready = [nd for nd in pool if len(nd.members) >= N]
        if ready:
            node = min(ready, key=lambda nd: nd.members[0])
            pool.remove(node)
            pool.extend(emit(node))
            pool.sort(key=lambda nd: nd.members[0])
            continue
        best = None
        for x_i in range(len(pool)):
            for y_i in range(x_i + 1, len(pool)):
                x, y = pool[x_i], pool[y_i]
                sup = merged(x, y)
                key = (len(sup), len(x.members) + len(y.members), x.members[0], y.members[0])
                if best is None or key < best[0]:
                    best = (key, x, y, sup)
        _, x, y, sup = best
        pool.remove(x)
        pool.remove(y)
        pool.append(MergeNode(sup, tuple(sorted(x.members + y.members))))
        pool.sort(key=lambda nd: nd.members[0])
    return Partition.from_groups(groups, N), results


def greedy_d(seqs, M: int, N: int, alphabet: Alphabet):
    """Run SH on the whole remaining pool, peel off the ``N`` sequences that
    complete first (input order on ties), and repeat on the rest.

    Each peeled set is then deposited on its own with SH.
    """
    seqs = list(seqs)
    _check_full(seqs, M, N)
    remaining = seqs
    groups, results = [], []
    for _ in range(M):
        if len(remaining) > N:
            joint = sh_deposit(SequencesSet(tuple(remaining), alphabet))
            order = sorted(range(len(remaining)),
                           key=lambda i: (joint.completion[remaining[i].id], i))
            picked = set(order[:N])
        else:
            picked = set(range(len(remaining)))
        chosen = [s for i, s in enumerate(remaining) if i in picked]
        remaining = [s for i, s in enumerate(remaining) if i not in picked]
        S = SequencesSet(tuple(chosen), alphabet, N)
        groups.append([s.id for s in chosen])
        results.append(sh_deposit(S))
    return Partition.from_groups(groups, N), results
