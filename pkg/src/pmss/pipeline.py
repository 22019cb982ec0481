"""Named end-to-end algorithms (distribution + deposition) and the
comparison harness built on them."""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .baselines import greedy_a, greedy_d
from .core import Alphabet, MultiSequencesSets, ParameterError, Partition, SequencesSet
from .deposition import LookAheadParams, _result, deposit
from .distribution import dda_distribute, dda_star_distribute
from .exact import (
    DEFAULT_PARTITION_BUDGET,
    DEFAULT_STATE_BUDGET,
    exhaustive_optimal,
    lower_bound,
    scs_dp,
)
from .metrics import CostReport, report_from_results

ALGORITHMS = (
    "alphabet", "greedy-a", "greedy-d", "dda-sh", "dda-lap",
    "ddastar-sh", "ddastar-lap", "sh-single", "lap-single", "exact",
)
ALIASES = {"dda*-sh": "ddastar-sh", "dda*-lap": "ddastar-lap", "opt": "exact"}


@dataclass
class Options:
    lookahead: LookAheadParams = LookAheadParams(3, 1)
    window: int | None = None
    seed: int = 0
    bias_symbols: str | None = None
    threads: int = 1
    state_budget: int = DEFAULT_STATE_BUDGET
    partition_budget: int = DEFAULT_PARTITION_BUDGET
    sc_mode: str = "exact"


@dataclass
class Solution:
    algorithm: str
    partition: Partition
    results: list
    cost_mm: int | None = None  # set only when it is not derived from results
    cost_sc: int | None = None


def canonical_name(name: str) -> str:
    name = ALIASES.get(name.lower(), name.lower())
    if name not in ALGORITHMS:
        raise ParameterError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}")
    return name


def input_order_partition(seqs, M, N) -> Partition:
    return Partition({s.id: i // N for i, s in enumerate(seqs)}, M, N)


def deposit_partition(seqs, partition: Partition, alphabet: Alphabet, method: str,
                      params: LookAheadParams | None = None, threads: int = 1) -> list:
    """Deposit every set of ``partition``; empty sets are skipped."""
    mss = MultiSequencesSets.from_partition(seqs, partition, alphabet)
    sets = [S for S in mss.sets if len(S)]
    if threads > 1 and len(sets) > 1:
        with ThreadPoolExecutor(threads) as ex:
            return list(ex.map(lambda S: deposit(S, method, params), sets))
    return [deposit(S, method, params) for S in sets]


def solve(algorithm: str, seqs, alphabet: Alphabet, M: int, N: int,
          options: Options | None = None) -> Solution:
    opts = options or Options()
    name = canonical_name(algorithm)
    seqs = list(seqs)
    la = opts.lookahead
    if name in ("greedy-a", "greedy-d"):
        fn = greedy_a if name == "greedy-a" else greedy_d
        part, results = fn(seqs, M, N, alphabet)
        return Solution(name, part, results)
    if name == "alphabet":
        part = input_order_partition(seqs, M, N)
        return Solution(name, part, deposit_partition(seqs, part, alphabet, "alphabet",
                                                      threads=opts.threads))
    if name in ("sh-single", "lap-single"):
        part = Partition({s.id: 0 for s in seqs}, 1, max(len(seqs), 1))
        method = "sh" if name == "sh-single" else "lap"
        return Solution(name, part, deposit_partition(seqs, part, alphabet, method, la))
    if name == "exact":
        mm = exhaustive_optimal(seqs, M, N, "mm", state_budget=opts.state_budget,
                                partition_budget=opts.partition_budget)
        sc = exhaustive_optimal(seqs, M, N, "sc", sc_mode=opts.sc_mode,
                                state_budget=opts.state_budget,
                                partition_budget=opts.partition_budget)
        mss = MultiSequencesSets.from_partition(seqs, mm.optimal_partition, alphabet)
        results = [_result(scs_dp(list(S), opts.state_budget)[1], S) for S in mss.sets]
        return Solution(name, mm.optimal_partition, results, cost_mm=mm.cost, cost_sc=sc.cost)
    if name.startswith("ddastar"):
        part = dda_star_distribute(seqs, M, N, alphabet, w=opts.window, seed=opts.seed)
    else:
        part = dda_distribute(seqs, M, N, alphabet, opts.bias_symbols)
    method = "sh" if name.endswith("-sh") else "lap"
    return Solution(name, part, deposit_partition(seqs, part, alphabet, method, la,
                                                  threads=opts.threads))


def compare(algorithms, seqs, alphabet: Alphabet, M: int, N: int,
            options: Options | None = None, with_lower_bound: bool = False) -> list[CostReport]:
    """One :class:`CostReport` per algorithm on the same data and seed.

    Ratios use ``K`` = longest sequence of the dataset.
    """
    seqs = list(seqs)
    if not algorithms:
        return []
    K = max(len(s) for s in seqs)
    lb = lower_bound(seqs, M, alphabet.q) if with_lower_bound else None
    out = []
    for name in algorithms:
        start = time.perf_counter()
        sol = solve(name, seqs, alphabet, M, N, options)
        wall = time.perf_counter() - start
        out.append(report_from_results(sol.algorithm, sol.results, alphabet.q, K, M, N,
                                       lower_bound=lb, wall_time=wall,
                                       mm=sol.cost_mm, sc=sol.cost_sc))
    return out
