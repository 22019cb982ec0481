"""scikit-learn style front ends for the PMSS solvers.

Every solver is fitted on a collection of sequences and exposes
``labels_`` (set index per input sequence, in input order), ``deposits_``
(one :class:`~pmss.deposition.DepositionResult` per non-empty set) and the
two cost attributes. ``fit_predict`` comes from ``ClusterMixin``.

>>> from pmss import DDA
>>> DDA(n_sets=2, capacity=2).fit(["AAAA", "TTTT", "AAAA", "TTTT"]).labels_.tolist()
[0, 1, 0, 1]
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin

from .core import MultiSequencesSets, ParameterError
from .exact import DEFAULT_PARTITION_BUDGET, DEFAULT_STATE_BUDGET
from .metrics import cost_mm, cost_sc, performance_ratio
from .pipeline import Options, solve
from .validation import check_lookahead, check_sequences, check_sets


class _PMSSSolver(ClusterMixin, BaseEstimator):
    _algorithm: str = ""

    def _options(self) -> Options:
        return Options()

    def _algorithm_name(self) -> str:
        return self._algorithm

    def fit(self, X, y=None):
        seqs, alphabet = check_sequences(X, getattr(self, "alphabet", None))
        M, N = check_sets(len(seqs), self.n_sets, self.capacity)
        sol = solve(self._algorithm_name(), seqs, alphabet, M, N, self._options())
        self.alphabet_ = alphabet
        self.n_sets_, self.capacity_ = M, N
        self.max_length_ = max(len(s) for s in seqs)
        self.partition_ = sol.partition
        self.labels_ = np.array([sol.partition.assignment[s.id] for s in seqs])
        self.deposits_ = sol.results
        self.cost_mm_ = sol.cost_mm if sol.cost_mm is not None else cost_mm(sol.results)
        self.cost_sc_ = sol.cost_sc if sol.cost_sc is not None else cost_sc(sol.results)
        self.sets_ = MultiSequencesSets.from_partition(seqs, sol.partition, alphabet)
        return self

    def performance_ratio(self, cost: str = "mm") -> float:
        if not hasattr(self, "deposits_"):
            raise ParameterError(f"{type(self).__name__} is not fitted")
        value = {"mm": self.cost_mm_, "sc": self.cost_sc_}[cost]
        return performance_ratio(value, self.alphabet_.q, self.max_length_,
                                 self.n_sets_, self.capacity_)

    def process_sequences(self) -> list[str]:
        return [r.text() for r in self.deposits_]


class AlphabetSolver(_PMSSSolver):
    """Input-order sets, each processed with the truncated periodic sequence."""

    _algorithm = "alphabet"

    def __init__(self, n_sets=1, capacity=None, alphabet=None):
        self.n_sets = n_sets
        self.capacity = capacity
        self.alphabet = alphabet


class DDA(_PMSSSolver):
    """Content-sorted round-robin distribution, then SH or LAP per set."""

    def __init__(self, n_sets=1, capacity=None, depositor="lap", lookahead=3, commit=1,
                 bias_symbols=None, alphabet=None):
        self.n_sets = n_sets
        self.capacity = capacity
        self.depositor = depositor
        self.lookahead = lookahead
        self.commit = commit
        self.bias_symbols = bias_symbols
        self.alphabet = alphabet

    def _algorithm_name(self):
        if self.depositor not in ("sh", "lap"):
            raise ParameterError(f"depositor must be 'sh' or 'lap', got {self.depositor!r}")
        return f"dda-{self.depositor}"

    def _options(self):
        return Options(lookahead=check_lookahead(self.lookahead, self.commit),
                       bias_symbols=self.bias_symbols)


class DDAStar(_PMSSSolver):
    """Motif-feature EM clustering with outlier-pool balancing, then SH or LAP."""

    def __init__(self, n_sets=1, capacity=None, depositor="lap", window=None, lookahead=3,
                 commit=1, random_state=0, alphabet=None):
        self.n_sets = n_sets
        self.capacity = capacity
        self.depositor = depositor
        self.window = window
        self.lookahead = lookahead
        self.commit = commit
        self.random_state = random_state
        self.alphabet = alphabet

    def _algorithm_name(self):
        if self.depositor not in ("sh", "lap"):
            raise ParameterError(f"depositor must be 'sh' or 'lap', got {self.depositor!r}")
        return f"ddastar-{self.depositor}"

    def _options(self):
        return Options(lookahead=check_lookahead(self.lookahead, self.commit),
                       window=self.window, seed=self.random_state)


class GreedyA(_PMSSSolver):
    _algorithm = "greedy-a"

    def __init__(self, n_sets=1, capacity=None, alphabet=None):
        self.n_sets = n_sets
        self.capacity = capacity
        self.alphabet = alphabet


class GreedyD(_PMSSSolver):
    _algorithm = "greedy-d"

    def __init__(self, n_sets=1, capacity=None, alphabet=None):
        self.n_sets = n_sets
        self.capacity = capacity
        self.alphabet = alphabet


class ExhaustiveSolver(_PMSSSolver):
    """Exact optimum by enumerating partitions; desk-scale instances only.

    ``cost_mm_`` and ``cost_sc_`` are each minimised on their own, so they
    may come from different partitions; ``labels_`` follows the MM optimum.
    """

    _algorithm = "exact"

    def __init__(self, n_sets=1, capacity=None, sc_mode="exact",
                 state_budget=DEFAULT_STATE_BUDGET, partition_budget=DEFAULT_PARTITION_BUDGET,
                 alphabet=None):
        self.n_sets = n_sets
        self.capacity = capacity
        self.sc_mode = sc_mode
        self.state_budget = state_budget
        self.partition_budget = partition_budget
        self.alphabet = alphabet

    def _options(self):
        return Options(state_budget=self.state_budget, partition_budget=self.partition_budget,
                       sc_mode=self.sc_mode)
