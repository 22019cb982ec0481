"""Alphabet and sequence types shared by every algorithm in the package.

Symbols are stored as small integer indices into an :class:`Alphabet`;
text is mapped to indices once, at construction time.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence as SequenceLike

import numpy as np


class PMSSError(ValueError):
    """Base class for all errors raised by this package."""


class InvalidSymbolError(PMSSError):
    pass


class EmptySetError(PMSSError):
    pass


class CapacityError(PMSSError):
    pass


class ParameterError(PMSSError):
    pass


class NotSupersequenceError(PMSSError):
    pass


class BudgetError(PMSSError):
    pass


class ShortSequenceError(PMSSError):
    pass


class SchemaError(PMSSError):
    pass


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of distinct symbols; the order fixes tie-breaking everywhere."""

    symbols: tuple[str, ...]

    def __init__(self, symbols: Iterable[str]):
        symbols = tuple(symbols)
        if not symbols:
            raise ParameterError("alphabet must contain at least one symbol")
        if len(set(symbols)) != len(symbols):
            raise ParameterError(f"alphabet symbols are not distinct: {symbols!r}")
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(symbols)})

    @classmethod
    def infer(cls, texts: Iterable[str]) -> "Alphabet":
        """Sorted set of distinct characters occurring in ``texts``."""
        chars = set()
        for t in texts:
            chars.update(t)
        return cls(sorted(chars))

    @property
    def q(self) -> int:
        return len(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._index

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise InvalidSymbolError(
                f"symbol {symbol!r} is not in alphabet {''.join(self.symbols)!r}"
            ) from None

    def encode(self, text: str) -> tuple[int, ...]:
        return tuple(self.index(ch) for ch in text)

    def decode(self, symbols: Iterable[int]) -> str:
        return "".join(self.symbols[i] for i in symbols)


DNA = Alphabet("ACGT")
BINARY = Alphabet("01")


@dataclass(frozen=True)
class Sequence:
    id: str
    symbols: tuple[int, ...]

    def __post_init__(self):
        if len(self.symbols) == 0:
            raise PMSSError(f"sequence {self.id!r} is empty")

    @classmethod
    def from_string(cls, text: str, alphabet: Alphabet, id=None) -> "Sequence":
        return cls(str(id) if id is not None else text, alphabet.encode(text))

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)

    @property
    def length(self) -> int:
        return len(self.symbols)

    def text(self, alphabet: Alphabet) -> str:
        return alphabet.decode(self.symbols)


def encode_all(texts: Iterable[str], alphabet: Alphabet, ids=None) -> list[Sequence]:
    """Encode strings into sequences; ids default to 0-based positions."""
    texts = list(texts)
    if ids is None:
        ids = range(len(texts))
    return [Sequence(str(i), alphabet.encode(t)) for i, t in zip(ids, texts)]


@dataclass(frozen=True)
class SequencesSet:
    """One set of sequences with its capacity.

    ``alphabet`` travels with the set because the Alphabet baseline and the
    look-ahead search need ``q``.
    """

    sequences: tuple[Sequence, ...]
    alphabet: Alphabet
    capacity: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "sequences", tuple(self.sequences))
        cap = self.capacity if self.capacity is not None else len(self.sequences)
        object.__setattr__(self, "capacity", cap)
        if len(self.sequences) > cap:
            raise CapacityError(
                f"set holds {len(self.sequences)} sequences but capacity is {cap}"
            )
        q = self.alphabet.q
        for s in self.sequences:
            if any(not 0 <= c < q for c in s.symbols):
                raise InvalidSymbolError(f"sequence {s.id!r} indexes outside the alphabet")

    @classmethod
    def from_strings(cls, texts, alphabet: Alphabet | str, capacity=None, ids=None):
        if isinstance(alphabet, str):
            alphabet = Alphabet(alphabet)
        return cls(tuple(encode_all(texts, alphabet, ids)), alphabet, capacity)

    def __len__(self) -> int:
        return len(self.sequences)

    def __iter__(self) -> Iterator[Sequence]:
        return iter(self.sequences)

    @property
    def max_length(self) -> int:
        return max((len(s) for s in self.sequences), default=0)

    def texts(self) -> list[str]:
        return [s.text(self.alphabet) for s in self.sequences]


@dataclass(frozen=True)
class Partition:
    """Assignment of sequence ids to ``n_sets`` sets of capacity ``capacity``."""

    assignment: dict
    n_sets: int
    capacity: int

    def __post_init__(self):
        if self.n_sets < 1:
            raise ParameterError("a partition needs at least one set")
        sizes = [0] * self.n_sets
        for sid, k in self.assignment.items():
            if not 0 <= k < self.n_sets:
                raise SchemaError(f"sequence {sid!r} assigned to invalid set {k}")
            sizes[k] += 1
        if any(n > self.capacity for n in sizes):
            raise CapacityError(f"set sizes {sizes} exceed capacity {self.capacity}")

    @classmethod
    def from_groups(cls, groups: SequenceLike[SequenceLike[str]], capacity: int):
        assignment = {}
        for k, ids in enumerate(groups):
            for sid in ids:
                if sid in assignment:
                    raise SchemaError(f"sequence {sid!r} appears in more than one set")
                assignment[sid] = k
        return cls(assignment, len(groups), capacity)

    def groups(self, order: Iterable[str] | None = None) -> list[list[str]]:
        """Ids per set; within a set, ids follow ``order`` (default: insertion)."""
        out = [[] for _ in range(self.n_sets)]
        for sid in (order if order is not None else self.assignment):
            out[self.assignment[sid]].append(sid)
        return out

    def sizes(self) -> list[int]:
        return [len(g) for g in self.groups()]


@dataclass(frozen=True)
class MultiSequencesSets:
    sets: tuple[SequencesSet, ...]
    alphabet: Alphabet = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(self.sets))
        if not self.sets:
            raise ParameterError("MSS needs at least one set")
        if self.alphabet is None:
            object.__setattr__(self, "alphabet", self.sets[0].alphabet)
        seen = set()
        for S in self.sets:
            if S.alphabet != self.alphabet:
                raise SchemaError("all sets must share one alphabet")
            for s in S:
                if s.id in seen:
                    raise SchemaError(f"sequence id {s.id!r} appears in more than one set")
                seen.add(s.id)

    @classmethod
    def from_partition(cls, sequences: SequenceLike[Sequence], partition: Partition,
                       alphabet: Alphabet) -> "MultiSequencesSets":
        by_id = {s.id: s for s in sequences}
        missing = set(by_id) - set(partition.assignment)
        if missing:
            raise SchemaError(f"{len(missing)} sequences are not assigned by the partition")
        groups = partition.groups(order=[s.id for s in sequences])
        return cls(tuple(SequencesSet(tuple(by_id[i] for i in g), alphabet, partition.capacity)
                         for g in groups), alphabet)

    @property
    def n_sets(self) -> int:
        return len(self.sets)

    def sequences(self) -> list[Sequence]:
        return [s for S in self.sets for s in S]

    def partition(self) -> Partition:
        cap = max(S.capacity for S in self.sets)
        return Partition.from_groups([[s.id for s in S] for S in self.sets], cap)


def alphabet_content(s: Sequence, symbol: str, alphabet: Alphabet) -> float:
    """Fraction of positions in ``s`` holding ``symbol``."""
    c = alphabet.index(symbol)
    return s.symbols.count(c) / len(s)


def set_alphabet_content(S: SequencesSet, symbol: str) -> float:
    """Pooled content: occurrences over total length, not a mean of fractions."""
    c = S.alphabet.index(symbol)
    if len(S) == 0:
        raise EmptySetError("alphabet content of an empty set is undefined")
    total = sum(len(s) for s in S)
    return sum(s.symbols.count(c) for s in S) / total


def subset_content(s: Sequence, symbols: Iterable[str], alphabet: Alphabet) -> float:
    """Summed content of several symbols, e.g. GC content."""
    idx = {alphabet.index(ch) for ch in symbols}
    return sum(1 for c in s.symbols if c in idx) / len(s)


def content_vector(s: Sequence, q: int) -> np.ndarray:
    return np.bincount(np.asarray(s.symbols), minlength=q) / len(s)


def content_matrix(seqs: SequenceLike[Sequence], q: int) -> np.ndarray:
    """Per-sequence content vectors as an ``(n, q)`` array."""
    out = np.zeros((len(seqs), q))
    for i, s in enumerate(seqs):
        out[i] = np.bincount(np.asarray(s.symbols), minlength=q) / len(s)
    return out


def padded_array(seqs: SequenceLike[Sequence], pad: int, extra: int = 1):
    """Stack sequences into an ``(n, K + extra)`` int array padded with ``pad``.

    Returns the array and the length vector.
    """
    lens = np.array([len(s) for s in seqs], dtype=np.int64)
    width = (int(lens.max()) if len(seqs) else 0) + extra
    arr = np.full((len(seqs), width), pad, dtype=np.int64)
    for i, s in enumerate(seqs):
        arr[i, : len(s)] = s.symbols
    return arr, lens
