"""Per-set process-sequence construction.

All depositors share the same mechanics: each remaining sequence exposes a
*frontier* symbol, appending a symbol to the process sequence consumes every
frontier that equals it, and a sequence completes at the step that consumes
its last symbol.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import (
    Alphabet,
    NotSupersequenceError,
    ParameterError,
    Sequence,
    SequencesSet,
    padded_array,
)

logger = logging.getLogger(__name__)

PROCESS_ID = "process"

# Max entries of the (candidates x prefixes) scoring table before m is reduced.
LOOKAHEAD_TABLE_BUDGET = 4_000_000


@dataclass(frozen=True)
class DepositionResult:
    process_sequence: Sequence
    completion: dict
    alphabet: Alphabet

    @property
    def steps(self) -> int:
        return len(self.process_sequence)

    def text(self) -> str:
        return self.process_sequence.text(self.alphabet)


@dataclass(frozen=True)
class LookAheadParams:
    m: int = 3
    l: int = 1

    def __post_init__(self):
        if not (isinstance(self.m, (int, np.integer)) and isinstance(self.l, (int, np.integer))):
            raise ParameterError("look-ahead depth and commit length must be integers")
        if self.m < 1 or self.l < 1 or self.l > self.m:
            raise ParameterError(f"need 1 <= l <= m, got m={self.m}, l={self.l}")


def is_subsequence(s, t) -> bool:
    it = iter(t)
    return all(c in it for c in s)


def is_common_supersequence(t, S) -> bool:
    """Greedy left-to-right embedding of every member of ``S`` into ``t``."""
    t = tuple(t)
    return all(is_subsequence(tuple(s), t) for s in S)


def _completion_steps(arr, lens, process) -> np.ndarray:
    """1-based step at which each row of ``arr`` is fully consumed; 0 if never."""
    n = len(lens)
    rows = np.arange(n)
    pos = np.zeros(n, dtype=np.int64)
    done = np.zeros(n, dtype=np.int64)
    for step, c in enumerate(process, start=1):
        adv = arr[rows, pos] == c
        pos += adv
        newly = adv & (pos == lens)
        done[newly] = step
    return done


def completion_steps(process, S) -> dict:
    """Map each sequence id to its greedy-embedding completion step."""
    seqs = list(S)
    if not seqs:
        return {}
    arr, lens = padded_array(seqs, pad=-1)
    done = _completion_steps(arr, lens, tuple(process))
    if (done == 0).any():
        bad = seqs[int(np.flatnonzero(done == 0)[0])].id
        raise NotSupersequenceError(f"sequence {bad!r} does not embed in the process sequence")
    return {s.id: int(d) for s, d in zip(seqs, done)}


def _result(process, S: SequencesSet) -> DepositionResult:
    process = tuple(int(c) for c in process)
    return DepositionResult(Sequence(PROCESS_ID, process), completion_steps(process, S), S.alphabet)


def _check_nonempty(S: SequencesSet):
    if len(S) == 0:
        raise ParameterError("cannot deposit an empty set")


def alphabet_deposit(S: SequencesSet) -> DepositionResult:
    """Periodic supersequence ``(a1 a2 ... aq)^K`` cut after the last completion."""
    _check_nonempty(S)
    q = S.alphabet.q
    last = 0
    for s in S:
        # 0-based position in the periodic string of the next symbol to place
        p = -1
        for c in s.symbols:
            p = p + 1 + (c - (p + 1)) % q
        last = max(last, p + 1)
    process = [i % q for i in range(last)]
    return _result(process, S)


def _sh_process(arr, lens, q):
    n = len(lens)
    rows = np.arange(n)
    pos = np.zeros(n, dtype=np.int64)
    active = pos < lens
    out = []
    while active.any():
        front = arr[rows, pos]
        counts = np.bincount(front[active], minlength=q)
        c = int(np.argmax(counts))
        out.append(c)
        pos += active & (front == c)
        active = pos < lens
    return out


def _bounded(process, S: SequencesSet, bounded: bool) -> DepositionResult:
    # majority-style heuristics can overshoot q*K on adversarial sets; the
    # periodic supersequence never does
    if bounded and len(process) > S.alphabet.q * S.max_length:
        return alphabet_deposit(S)
    return _result(process, S)


def sh_deposit(S: SequencesSet, bounded: bool = True) -> DepositionResult:
    """Sum-Height: append the majority frontier symbol (lowest index on ties).

    With ``bounded`` the result falls back to :func:`alphabet_deposit` when SH
    would exceed ``q * K`` steps.
    """
    _check_nonempty(S)
    arr, lens = padded_array(list(S), pad=0)
    return _bounded(_sh_process(arr, lens, S.alphabet.q), S, bounded)


def sh_steps_batch(arr, lens, masks, q) -> np.ndarray:
    """SH step counts for many subsets of the rows of ``arr`` at once.

    ``masks`` is a ``(V, n)`` boolean array; row ``v`` selects the sequences of
    variant ``v``. Every variant is simulated in lock-step.
    """
    masks = np.asarray(masks, dtype=bool)
    V, n = masks.shape
    pos = np.zeros((V, n), dtype=np.int64)
    active = masks & (lens[None, :] > 0)
    steps = np.zeros(V, dtype=np.int64)
    cols = np.broadcast_to(np.arange(n), (V, n))
    offs = (np.arange(V) * q)[:, None]
    while True:
        live = active.any(axis=1)
        if not live.any():
            return steps
        steps += live
        front = arr[cols, pos]
        keys = (front + offs)[active]
        counts = np.bincount(keys, minlength=V * q).reshape(V, q)
        choice = np.argmax(counts, axis=1)
        pos += active & (front == choice[:, None])
        active &= pos < lens[None, :]


def sh_steps(seqs, q) -> int:
    if not seqs:
        return 0
    arr, lens = padded_array(list(seqs), pad=0)
    return len(_sh_process(arr, lens, q))


@lru_cache(maxsize=32)
def _lookahead_table(q: int, m: int) -> np.ndarray:
    """Symbols consumed from each m-prefix by each length-m candidate.

    Rows enumerate candidates lexicographically; columns enumerate prefixes
    over ``q + 1`` symbols where ``q`` marks the end of a sequence.
    """
    cands = np.array(list(itertools.product(range(q), repeat=m)), dtype=np.int64)
    prefixes = np.array(list(itertools.product(range(q + 1), repeat=m)), dtype=np.int64)
    # extra column of -1 so an exhausted prefix never matches again
    prefixes = np.hstack([prefixes, np.full((len(prefixes), 1), -1)])
    cols = np.arange(len(prefixes))[None, :]
    k = np.zeros((len(cands), len(prefixes)), dtype=np.int64)
    for step in range(m):
        k += prefixes[cols, k] == cands[:, step][:, None]
    return k


def effective_lookahead(q: int, params: LookAheadParams) -> LookAheadParams:
    """Reduce m for large alphabets where q**m enumeration would dominate."""
    m = params.m
    if q > 8 and m >= 3:
        m = 2
    while m > 1 and (q ** m) * (q + 1) ** m > LOOKAHEAD_TABLE_BUDGET:
        m -= 1
    if m != params.m:
        logger.warning("look-ahead depth reduced from %d to %d for alphabet size %d",
                       params.m, m, q)
        return LookAheadParams(m, min(params.l, m))
    return params


def _la_sh_process(arr, lens, q, m, l):
    n = len(lens)
    rows = np.arange(n)
    pos = np.zeros(n, dtype=np.int64)
    active = pos < lens
    table = _lookahead_table(q, m)
    first_symbol = np.repeat(np.arange(q), q ** (m - 1))
    weights = (q + 1) ** np.arange(m - 1, -1, -1)
    window = np.arange(m)
    out = []
    while active.any():
        codes = arr[rows[:, None], pos[:, None] + window] @ weights
        counts = np.bincount(codes[active], minlength=(q + 1) ** m)
        scores = table @ counts
        front = arr[rows, pos]
        present = np.zeros(q, dtype=bool)
        present[front[active]] = True
        # a candidate opening with a non-frontier symbol is dominated by its
        # shifted tail and would stall the search
        scores[~present[first_symbol]] = -1
        best = int(np.argmax(scores))
        cand = np.unravel_index(best, (q,) * m)
        for c in cand[:l]:
            c = int(c)
            front = arr[rows, pos]
            if not (active & (front == c)).any():
                continue
            out.append(c)
            pos += active & (front == c)
            active = pos < lens
            if not active.any():
                break
    return out


def la_sh_deposit(S: SequencesSet, params: LookAheadParams = LookAheadParams(),
                  bounded: bool = True) -> DepositionResult:
    """(m, l) look-ahead Sum-Height.

    Each round scores every length-m extension by the number of frontier
    symbols it consumes and commits the first ``l`` symbols of the best one
    (lexicographically smallest on ties). ``bounded`` as in :func:`sh_deposit`.
    """
    _check_nonempty(S)
    if not isinstance(params, LookAheadParams):
        params = LookAheadParams(*params)
    q = S.alphabet.q
    params = effective_lookahead(q, params)
    arr, lens = padded_array(list(S), pad=q, extra=params.m + 1)
    return _bounded(_la_sh_process(arr, lens, q, params.m, params.l), S, bounded)


def _essential_positions(arr, lens, t) -> np.ndarray:
    """Positions of ``t`` that some sequence cannot do without.

    Position p is essential for a sequence iff its earliest and latest
    embeddings both place the same character at p.
    """
    n, width = arr.shape
    rows = np.arange(n)
    L = len(t)
    early = np.full((n, width), -1, dtype=np.int64)
    late = np.full((n, width), -2, dtype=np.int64)
    pos = np.zeros(n, dtype=np.int64)
    for j in range(L):
        hit = (pos < lens) & (arr[rows, pos] == t[j])
        early[rows[hit], pos[hit]] = j
        pos += hit
    pos = lens - 1
    for j in range(L - 1, -1, -1):
        hit = (pos >= 0) & (arr[rows, np.maximum(pos, 0)] == t[j])
        late[rows[hit], pos[hit]] = j
        pos -= hit
    essential = np.zeros(L, dtype=bool)
    same = early == late
    essential[early[same]] = True
    return essential


def lap_reduce(t, S: SequencesSet) -> Sequence:
    """Delete removable characters of ``t`` until none is left.

    Each pass removes the first position whose deletion keeps ``t`` a common
    supersequence of ``S``, then rescans from the start.
    """
    _check_nonempty(S)
    t = [int(c) for c in t]
    seqs = list(S)
    if not is_common_supersequence(t, [s.symbols for s in seqs]):
        raise NotSupersequenceError("template is not a common supersequence of the set")
    arr, lens = padded_array(seqs, pad=-1)
    while True:
        essential = _essential_positions(arr, lens, t)
        free = np.flatnonzero(~essential)
        if len(free) == 0:
            return Sequence(PROCESS_ID, tuple(t))
        del t[int(free[0])]


def lap_deposit(S: SequencesSet, params: LookAheadParams = LookAheadParams(3, 1)) -> DepositionResult:
    """Look-ahead SH template followed by :func:`lap_reduce`."""
    template = la_sh_deposit(S, params).process_sequence
    reduced = lap_reduce(template.symbols, S)
    return _result(reduced.symbols, S)


DEPOSITORS = {
    "alphabet": lambda S, params=None: alphabet_deposit(S),
    "sh": lambda S, params=None: sh_deposit(S),
    "la-sh": lambda S, params=None: la_sh_deposit(S, params or LookAheadParams()),
    "lap": lambda S, params=None: lap_deposit(S, params or LookAheadParams()),
}


def deposit(S: SequencesSet, method: str = "lap", params: LookAheadParams | None = None):
    """Dispatch to a depositor by name."""
    try:
        fn = DEPOSITORS[method]
    except KeyError:
        raise ParameterError(f"unknown deposition method {method!r}") from None
    return fn(S, params)
