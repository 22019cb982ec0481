"""Command-line front end: ``pmss gen|run|exact|compare``.

Reports go to stdout as TSV, diagnostics to stderr as one line. Exit codes
are 0 (success), 1 (usage) and 2 (runtime error).
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .core import Alphabet, DNA, MultiSequencesSets, PMSSError, ParameterError
from .dataio import (
    GeneratorSpec,
    gc_target,
    generate,
    load_fasta,
    load_lines,
    load_partition,
    save_partition,
    write_fasta,
    write_lines,
)
from .exact import DEFAULT_PARTITION_BUDGET, DEFAULT_STATE_BUDGET
from .metrics import to_tsv
from .pipeline import ALGORITHMS, Options, canonical_name, compare, solve
from .validation import check_lookahead, check_sets

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2
HEURISTICS = ("alphabet", "greedy-a", "greedy-d", "dda-sh", "dda-lap", "ddastar-sh", "ddastar-lap")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _length(text: str):
    lo, sep, hi = text.partition(":")
    try:
        return (int(lo), int(hi)) if sep else int(lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected K or KMIN:KMAX, got {text!r}") from None


def _gc(text: str):
    lo, sep, hi = text.partition(":")
    try:
        return ("GC", float(lo), float(hi)) if sep else gc_target(float(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected GC or LO:HI, got {text!r}") from None


def _input_args(p):
    src = p.add_argument_group("input (a file via --input, or a generated dataset via --count)")
    src.add_argument("--input", help="sequence file to read")
    src.add_argument("--format", choices=("fasta", "lines", "mss"),
                     help="input format (default: guessed from the file extension)")
    src.add_argument("--alphabet", help="symbols in order, e.g. ACGT (default: DNA for "
                                        "fasta and generated data, inferred for lines)")
    src.add_argument("--count", type=int, help="generate this many sequences")
    src.add_argument("--k", type=_length, default=25, help="generated length K or KMIN:KMAX")
    src.add_argument("--gc", type=_gc, help="generated GC content, a value or LO:HI range")
    p.add_argument("--seed", type=int, default=0, help="seed for generation and DDA* (default 0)")


def _set_args(p):
    p.add_argument("--m", "--sets", dest="m", type=int, required=True, help="number of sets M")
    p.add_argument("--n", "--capacity", dest="n", type=int,
                   help="set capacity N (default: ceil(count/M))")
    p.add_argument("--output-partition", help="write the resulting partition to this file")
    p.add_argument("--timing", action="store_true",
                   help="fill wall_ms (otherwise NA, keeping output byte-stable)")


def _heuristic_args(p):
    p.add_argument("--lookahead", type=int, default=3, help="look-ahead depth m (default 3)")
    p.add_argument("--commit", type=int, default=1, help="symbols committed per round l (default 1)")
    p.add_argument("--window", type=int, help="DDA* motif window w (default q)")
    p.add_argument("--bias-symbols", help="DDA keys on the content of this symbol subset")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                   help="worker threads for per-set deposition (default: CPU count)")


def _budget_args(p):
    p.add_argument("--state-budget", type=int, default=DEFAULT_STATE_BUDGET,
                   help="largest DP lattice allowed")
    p.add_argument("--partition-budget", type=int, default=DEFAULT_PARTITION_BUDGET,
                   help="largest number of partitions enumerated")
    p.add_argument("--sc-mode", choices=("exact", "witness"), default="exact",
                   help="optimal SC over all supersequences or over the shortest ones")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pmss", description="Distribute sequences into sets and "
                                              "compute per-set process sequences.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a random dataset")
    g.add_argument("--count", type=int, required=True)
    g.add_argument("--k", type=_length, default=25, help="length K or KMIN:KMAX")
    g.add_argument("--alphabet", default="ACGT")
    g.add_argument("--gc", type=_gc, help="GC content, a value or LO:HI range")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--format", choices=("lines", "fasta"), default="lines")
    g.add_argument("--output", help="file to write (default: stdout)")

    r = sub.add_parser("run", help="run one or more algorithms and report costs")
    _input_args(r)
    _set_args(r)
    r.add_argument("--algo", default="dda-lap",
                   help=f"comma-separated algorithms from: {', '.join(ALGORITHMS)}")
    r.add_argument("--lower-bound", action="store_true", help="also compute the lower bound")
    _heuristic_args(r)
    _budget_args(r)

    e = sub.add_parser("exact", help="exhaustive optimum and lower bound (small instances)")
    _input_args(e)
    _set_args(e)
    _budget_args(e)

    c = sub.add_parser("compare", help="run every heuristic plus the lower bound")
    _input_args(c)
    _set_args(c)
    c.add_argument("--algo", default=",".join(HEURISTICS), help="comma-separated algorithms")
    c.add_argument("--with-exact", action="store_true", help="append the exhaustive optimum")
    _heuristic_args(c)
    _budget_args(c)
    return parser


def _guess_format(path: str) -> str:
    suffix = Path(path).suffix.lower()
    if suffix in (".fa", ".fasta", ".fna"):
        return "fasta"
    if suffix == ".mss":
        return "mss"
    return "lines"


def load_input(args):
    """Return ``(sequences, alphabet)`` from ``--input`` or ``--count``."""
    if (args.input is None) == (args.count is None):
        raise UsageError("give exactly one of --input or --count")
    given = Alphabet(args.alphabet) if args.alphabet else None
    if args.count is not None:
        alphabet = given or DNA
        spec = GeneratorSpec(args.count, args.k, alphabet, subset_target=args.gc, seed=args.seed)
        return generate(spec), alphabet
    path = args.input
    if not Path(path).is_file():
        raise FileNotFoundError(f"input file not found: {path}")
    fmt = args.format or _guess_format(path)
    if fmt == "fasta":
        alphabet = given or DNA
        return load_fasta(path, alphabet), alphabet
    if fmt == "lines":
        return load_lines(path, given)
    mss, _ = load_partition(path)
    if given is not None and given != mss.alphabet:
        raise ParameterError("--alphabet disagrees with the partition file header")
    return mss.sequences(), mss.alphabet


def _options(args) -> Options:
    opts = Options(seed=args.seed, state_budget=args.state_budget,
                   partition_budget=args.partition_budget, sc_mode=args.sc_mode)
    if hasattr(args, "lookahead"):
        opts.lookahead = check_lookahead(args.lookahead, args.commit)
        opts.window = args.window
        opts.bias_symbols = args.bias_symbols
        opts.threads = max(1, args.threads)
    return opts


def _header(seqs, alphabet, M, N, seed):
    return {"q": alphabet.q, "K": max(len(s) for s in seqs), "count": len(seqs),
            "M": M, "N": N, "seed": seed}


def _write_partition(path, seqs, alphabet, solution):
    mss = MultiSequencesSets.from_partition(seqs, solution.partition, alphabet)
    results, it = [], iter(solution.results)
    for S in mss.sets:
        results.append(next(it) if len(S) else None)
    save_partition(path, mss, results)


def _report(args, algorithms, seqs, alphabet, with_lb):
    if not seqs:
        raise ParameterError("the input holds no sequences")
    M, N = check_sets(len(seqs), args.m, args.n)
    opts = _options(args)
    names = [canonical_name(a.strip()) for a in algorithms if a.strip()]
    if not names:
        raise UsageError("no algorithm selected")
    reports = compare(names, seqs, alphabet, M, N, opts, with_lower_bound=with_lb)
    sys.stdout.write(to_tsv(reports, _header(seqs, alphabet, M, N, args.seed), args.timing))
    if args.output_partition:
        # solve is deterministic, so re-running the last algorithm reproduces its partition
        _write_partition(args.output_partition, seqs, alphabet,
                         solve(names[-1], seqs, alphabet, M, N, opts))
    return EXIT_OK


def cmd_gen(args) -> int:
    alphabet = Alphabet(args.alphabet)
    seqs = generate(GeneratorSpec(args.count, args.k, alphabet, subset_target=args.gc,
                                  seed=args.seed))
    text = (write_fasta if args.format == "fasta" else write_lines)(seqs, alphabet)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_run(args) -> int:
    seqs, alphabet = load_input(args)
    return _report(args, args.algo.split(","), seqs, alphabet, args.lower_bound)


def cmd_exact(args) -> int:
    seqs, alphabet = load_input(args)
    return _report(args, ["exact"], seqs, alphabet, True)


def cmd_compare(args) -> int:
    seqs, alphabet = load_input(args)
    algos = args.algo.split(",") + (["exact"] if args.with_exact else [])
    return _report(args, algos, seqs, alphabet, True)


COMMANDS = {"gen": cmd_gen, "run": cmd_run, "exact": cmd_exact, "compare": cmd_compare}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"pmss: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PMSSError, OSError) as exc:
        msg = " ".join(str(exc).split())
        print(f"pmss: error: {msg}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
