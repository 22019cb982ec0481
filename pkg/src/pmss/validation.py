"""Input validation helpers shared by the estimators and the CLI."""
from __future__ import annotations

import math

from .core import (
    Alphabet,
    CapacityError,
    MultiSequencesSets,
    ParameterError,
    Sequence,
    SequencesSet,
    encode_all,
)
from .deposition import LookAheadParams


def check_sequences(X, alphabet=None):
    """Normalise ``X`` to ``(list[Sequence], Alphabet)``.

    Accepts strings (alphabet inferred when not given), :class:`Sequence`
    objects together with their alphabet, a :class:`SequencesSet` or a
    :class:`MultiSequencesSets`.
    """
    if isinstance(alphabet, str):
        alphabet = Alphabet(alphabet)
    if isinstance(X, MultiSequencesSets):
        return X.sequences(), alphabet or X.alphabet
    if isinstance(X, SequencesSet):
        return list(X.sequences), alphabet or X.alphabet
    items = list(X)
    if not items:
        raise ParameterError("no sequences given")
    if all(isinstance(x, str) for x in items):
        alphabet = alphabet or Alphabet.infer(items)
        return encode_all(items, alphabet), alphabet
    if all(isinstance(x, Sequence) for x in items):
        if alphabet is None:
            raise ParameterError("an alphabet is required for encoded sequences")
        ids = [s.id for s in items]
        if len(set(ids)) != len(ids):
            raise ParameterError("sequence ids must be unique")
        SequencesSet(tuple(items), alphabet)  # symbol range check
        return items, alphabet
    raise ParameterError("expected strings or Sequence objects")


def check_sets(n_items: int, n_sets, capacity):
    """Resolve ``(M, N)``; a missing capacity fills the sets evenly."""
    if n_sets is None or n_sets < 1:
        raise ParameterError(f"number of sets must be >= 1, got {n_sets}")
    N = capacity if capacity is not None else math.ceil(n_items / n_sets)
    if N < 1:
        raise ParameterError(f"capacity must be >= 1, got {N}")
    if n_items > n_sets * N:
        raise CapacityError(f"{n_items} sequences exceed {n_sets} sets of {N}")
    return n_sets, N


def check_lookahead(m, l) -> LookAheadParams:
    return LookAheadParams(m, l)
