"""Dataset generation, ingestion, and the ``.mss`` partition file format.

Partition files look like::

    MSS v1 q=4 M=2 N=2 alphabet="ACGT"
    SET 0
    0<TAB>AAAA
    2<TAB>AAAA
    PS AAAA
    SET 1
    ...

``PS`` carries the set's process sequence when one is known. The
``alphabet`` key is optional; without it the alphabet is inferred from the
sequences.
"""
from __future__ import annotations

import json
import shlex
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import (
    Alphabet,
    DNA,
    InvalidSymbolError,
    MultiSequencesSets,
    ParameterError,
    SchemaError,
    Sequence,
    SequencesSet,
)

MSS_MAGIC = "MSS"
MSS_VERSION = "v1"


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters of a random dataset.

    ``length`` is an int or an inclusive ``(min, max)`` range. Per-position
    symbol probabilities come from ``content_profile`` when given; otherwise
    ``subset_target=(symbols, lo, hi)`` draws each sequence's subset content
    (e.g. GC) uniformly from ``[lo, hi]``; otherwise symbols are uniform.
    """

    count: int
    length: int | tuple = 25
    alphabet: Alphabet = DNA
    content_profile: tuple | None = None
    subset_target: tuple | None = None
    seed: int = 0

    def __post_init__(self):
        if self.count < 0:
            raise ParameterError("count must be >= 0")
        lo, hi = self.length_range
        if lo < 1 or lo > hi:
            raise ParameterError(f"invalid length range {self.length!r}")
        if self.content_profile is not None:
            p = np.asarray(self.content_profile, dtype=float)
            if p.shape != (self.alphabet.q,) or (p < 0).any() or abs(p.sum() - 1) > 1e-9:
                raise ParameterError("content profile must be q non-negative fractions summing to 1")
        if self.subset_target is not None:
            symbols, lo_t, hi_t = self.subset_target
            for ch in symbols:
                self.alphabet.index(ch)
            if not 0 <= lo_t <= hi_t <= 1:
                raise ParameterError("subset content target must satisfy 0 <= lo <= hi <= 1")
            if len(set(symbols)) in (0, self.alphabet.q) and not (lo_t == hi_t == 1):
                raise ParameterError("subset target needs a proper, non-empty symbol subset")

    @property
    def length_range(self) -> tuple[int, int]:
        if isinstance(self.length, (tuple, list)):
            return int(self.length[0]), int(self.length[1])
        return int(self.length), int(self.length)


def generate(spec: GeneratorSpec) -> list[Sequence]:
    rng = np.random.default_rng(spec.seed)
    q = spec.alphabet.q
    lo, hi = spec.length_range
    lengths = rng.integers(lo, hi + 1, size=spec.count)
    out = []
    base = (np.asarray(spec.content_profile, dtype=float)
            if spec.content_profile is not None else np.full(q, 1.0 / q))
    if spec.subset_target is not None:
        symbols, lo_t, hi_t = spec.subset_target
        inside = np.zeros(q, dtype=bool)
        inside[[spec.alphabet.index(ch) for ch in set(symbols)]] = True
        targets = rng.uniform(lo_t, hi_t, size=spec.count)
    for i, n in enumerate(lengths):
        p = base
        if spec.subset_target is not None:
            p = np.where(inside, targets[i] / inside.sum(),
                         (1 - targets[i]) / max((~inside).sum(), 1))
        symbols = rng.choice(q, size=int(n), p=p)
        out.append(Sequence(str(i), tuple(int(c) for c in symbols)))
    return out


def gc_target(gc: float, spread: float = 0.0) -> tuple:
    """Subset target for DNA GC content ``gc`` +/- ``spread``."""
    return ("GC", max(0.0, gc - spread), min(1.0, gc + spread))


def load_fasta(path, alphabet: Alphabet = DNA) -> list[Sequence]:
    """Read ``>id`` records; sequence lines may wrap and are concatenated."""
    records, current, chunks = [], None, []

    def flush():
        if current is None:
            return
        text = "".join(chunks)
        if not text:
            raise SchemaError(f"FASTA record {current!r} has no sequence")
        try:
            records.append(Sequence(current, alphabet.encode(text)))
        except InvalidSymbolError as exc:
            raise InvalidSymbolError(f"record {current!r}: {exc}") from None

    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            if line.startswith(">"):
                flush()
                current = line[1:].split()[0] if line[1:].strip() else None
                if current is None:
                    raise SchemaError(f"line {lineno}: FASTA header without an id")
                chunks = []
            else:
                if current is None:
                    raise SchemaError(f"line {lineno}: sequence data before the first header")
                chunks.append(line)
    flush()
    ids = [r.id for r in records]
    if len(set(ids)) != len(ids):
        raise SchemaError("duplicate FASTA record ids")
    return records


def load_lines(path, alphabet: Alphabet | None = None):
    """One sequence per non-empty line; ids are 0-based line numbers.

    Returns ``(sequences, alphabet)``; the alphabet is inferred (sorted
    distinct characters) when not given.
    """
    text = Path(path).read_text(encoding="utf-8")
    lines = [(i, ln) for i, ln in enumerate(text.split("\n")) if ln.rstrip("\r")]
    lines = [(i, ln.rstrip("\r")) for i, ln in lines]
    if alphabet is None:
        alphabet = Alphabet.infer(ln for _, ln in lines) if lines else Alphabet("0")
    seqs = []
    for i, ln in lines:
        try:
            seqs.append(Sequence(str(i), alphabet.encode(ln)))
        except InvalidSymbolError as exc:
            raise InvalidSymbolError(f"line {i}: {exc}") from None
    return seqs, alphabet


def write_lines(seqs, alphabet: Alphabet) -> str:
    return "".join(s.text(alphabet) + "\n" for s in seqs)


def write_fasta(seqs, alphabet: Alphabet) -> str:
    return "".join(f">{s.id}\n{s.text(alphabet)}\n" for s in seqs)


def save_partition(path, mss: MultiSequencesSets, results=None) -> None:
    """Write ``mss`` (and optionally one process sequence per set) to ``path``."""
    Path(path).write_text(dumps_partition(mss, results), encoding="utf-8")


def dumps_partition(mss: MultiSequencesSets, results=None) -> str:
    A = mss.alphabet
    N = max(S.capacity for S in mss.sets)
    lines = [f"{MSS_MAGIC} {MSS_VERSION} q={A.q} M={mss.n_sets} N={N} "
             f"alphabet={json.dumps(''.join(A.symbols))}"]
    if results is not None and len(results) != mss.n_sets:
        raise SchemaError("need exactly one deposition result per set")
    for k, S in enumerate(mss.sets):
        lines.append(f"SET {k}")
        for s in S:
            if "\t" in s.id or "\n" in s.id:
                raise SchemaError(f"sequence id {s.id!r} contains a tab or newline")
            lines.append(f"{s.id}\t{s.text(A)}")
        if results is not None and results[k] is not None:
            lines.append(f"PS {results[k].text()}")
    return "\n".join(lines) + "\n"


def _parse_header(line: str) -> dict:
    parts = shlex.split(line, posix=False)
    if len(parts) < 2 or parts[0] != MSS_MAGIC or parts[1] != MSS_VERSION:
        raise SchemaError(f"not an {MSS_MAGIC} {MSS_VERSION} file: {line!r}")
    fields = {}
    for p in parts[2:]:
        key, sep, value = p.partition("=")
        if not sep:
            raise SchemaError(f"malformed header field {p!r}")
        fields[key] = value
    for key in ("q", "M", "N"):
        if key not in fields:
            raise SchemaError(f"header lacks {key}=")
        try:
            fields[key] = int(fields[key])
        except ValueError:
            raise SchemaError(f"header field {key} is not an integer") from None
    if "alphabet" in fields:
        try:
            fields["alphabet"] = json.loads(fields["alphabet"])
        except json.JSONDecodeError:
            raise SchemaError("header alphabet is not a JSON string") from None
    return fields


def loads_partition(text: str):
    """Parse partition text into ``(MultiSequencesSets, process_strings)``."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise SchemaError("empty partition file")
    header = _parse_header(lines[0])
    sets, processes = [], []
    for lineno, line in enumerate(lines[1:], start=2):
        if line.startswith("SET "):
            try:
                k = int(line[4:])
            except ValueError:
                raise SchemaError(f"line {lineno}: bad set index") from None
            if k != len(sets):
                raise SchemaError(f"line {lineno}: expected SET {len(sets)}, found SET {k}")
            sets.append([])
            processes.append(None)
        elif line.startswith("PS "):
            if not sets:
                raise SchemaError(f"line {lineno}: PS outside a set")
            processes[-1] = line[3:]
        elif "\t" in line:
            if not sets:
                raise SchemaError(f"line {lineno}: sequence outside a set")
            sid, _, seq = line.partition("\t")
            sets[-1].append((sid, seq))
        elif line.strip():
            raise SchemaError(f"line {lineno}: unrecognised line {line!r}")
    if len(sets) != header["M"]:
        raise SchemaError(f"header says M={header['M']} but file has {len(sets)} sets")
    if "alphabet" in header:
        alphabet = Alphabet(header["alphabet"])
    else:
        alphabet = Alphabet.infer(seq for S in sets for _, seq in S)
    if alphabet.q != header["q"]:
        raise SchemaError(f"header says q={header['q']} but alphabet has {alphabet.q} symbols")
    seen = set()
    built = []
    for members in sets:
        seqs = []
        for sid, text in members:
            if sid in seen:
                raise SchemaError(f"sequence id {sid!r} appears more than once")
            seen.add(sid)
            seqs.append(Sequence(sid, alphabet.encode(text)))
        if len(seqs) > header["N"]:
            raise SchemaError(f"a set holds {len(seqs)} sequences but N={header['N']}")
        built.append(SequencesSet(tuple(seqs), alphabet, header["N"]))
    return MultiSequencesSets(tuple(built), alphabet), processes


def load_partition(path):
    return loads_partition(Path(path).read_text(encoding="utf-8"))
