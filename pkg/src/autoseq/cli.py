"""Command-line front end.

Subcommands: seq (dump sequence values), automaton (DOT export of the
compiled machine), witness (gap multiples, residue solutions, refutations),
eval (exact number evaluation), scan (non-periodicity grid search).

A sequence is selected either with --spec FILE (JSON, see
basek.spec_from_json) or inline with --k/--L plus --pattern or --digitsum,
optionally followed by --coeffs (polynomial output map, constant term
first) and --arithsub N,l; inline and --spec are mutually exclusive.

Contractual output goes to stdout; diagnostics (state counts, construction
traces) go to stderr.  Nothing is randomized, so identical invocations
produce identical bytes.

Exit codes: 0 success, 2 bad usage or spec parse failure, 3 verification
mismatch, 4 state cap exceeded, 5 witness search cap exceeded, 6 radix
below the value modulus, 7 scan left entries unresolved.
"""

from __future__ import annotations

import argparse
import json
import sys

from .basek import (
    ArithSub,
    DigitSum,
    Pattern,
    PatternCount,
    PolyMap,
    SequenceSpec,
    SpecFormatError,
    eval_seq,
    spec_from_json,
)
from .dfao import StateCapExceeded, compile_spec, minimize, to_dot
from .periodicity import (
    SearchCapExceeded,
    construct_refutation,
    find_gap_multiple,
    render_scan_report,
    scan_everywhere_nonperiodic,
    solve_residue,
)
from .realnum import DigitStream

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFY = 3
EXIT_STATE_CAP = 4
EXIT_SEARCH_CAP = 5
EXIT_BAD_RADIX = 6
EXIT_UNRESOLVED = 7


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _add_spec_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--spec", metavar="FILE", help="JSON spec file")
    p.add_argument("--k", type=int, help="digit base")
    p.add_argument("--L", type=int, help="value modulus")
    p.add_argument("--pattern", help="digit word, most-significant digit first")
    p.add_argument("--digitsum", action="store_true", help="count nonzero digits")
    p.add_argument("--coeffs", help="polynomial output map, constant term first (a0,a1,...)")
    p.add_argument("--arithsub", metavar="N,l", help="restrict to offset N, step l")


def _build_spec(args) -> SequenceSpec:
    inline = any(
        v is not None and v is not False
        for v in (args.k, args.L, args.pattern, args.coeffs, args.arithsub)
    ) or args.digitsum
    if args.spec and inline:
        raise _CliError(EXIT_USAGE, "--spec and inline spec flags are mutually exclusive")
    if args.spec:
        try:
            with open(args.spec, "r", encoding="utf-8") as fh:
                obj = json.load(fh)
            return spec_from_json(obj)
        except (OSError, json.JSONDecodeError, SpecFormatError) as exc:
            raise _CliError(EXIT_USAGE, f"cannot load spec: {exc}") from exc
    if args.k is None or args.L is None:
        raise _CliError(EXIT_USAGE, "an inline spec needs --k and --L")
    if args.pattern and args.digitsum:
        raise _CliError(EXIT_USAGE, "--pattern and --digitsum are mutually exclusive")
    try:
        if args.pattern:
            core: PatternCount | DigitSum = PatternCount(
                Pattern.from_string(args.pattern, args.k)
            )
        else:
            core = DigitSum()
        transforms = []
        if args.coeffs:
            transforms.append(PolyMap(tuple(int(c) for c in args.coeffs.split(","))))
        if args.arithsub:
            n, l = (int(p) for p in args.arithsub.split(","))
            transforms.append(ArithSub(n, l))
        return SequenceSpec(args.k, args.L, core, tuple(transforms))
    except ValueError as exc:
        raise _CliError(EXIT_USAGE, f"bad inline spec: {exc}") from exc


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_seq(args) -> int:
    spec = _build_spec(args)
    machine = compile_spec(spec, state_cap=args.state_cap)
    start, count = args.start, args.count
    if count < 1:
        raise _CliError(EXIT_USAGE, "--count must be >= 1")
    values = [machine.run(n) for n in range(start, start + count)]
    if args.verify:
        for n, v in zip(range(start, start + count), values):
            if eval_seq(spec, n) != v:
                raise _CliError(EXIT_VERIFY, f"machine and direct evaluation differ at n={n}")
    _emit(" ".join(str(v) for v in values) + "\n", args.out)
    return EXIT_OK


def _cmd_automaton(args) -> int:
    spec = _build_spec(args)
    machine = compile_spec(spec, minimized=False, state_cap=args.state_cap)
    if args.minimize:
        machine = minimize(machine)
    print(f"states={machine.states}", file=sys.stderr)
    _emit(to_dot(machine), args.out)
    return EXIT_OK


def _cmd_witness(args) -> int:
    modes = [m for m in (args.lemma22, args.prop41, args.refute) if m is not None]
    if len(modes) != 1:
        raise _CliError(EXIT_USAGE, "pick exactly one of --lemma22, --prop41, --refute")
    if args.lemma22:
        if args.k is None:
            raise _CliError(EXIT_USAGE, "--lemma22 needs --k")
        l, t = _int_pair(args.lemma22, "--lemma22")
        w = find_gap_multiple(l, t, args.k, cap=args.cap)
        gap = "inf" if w.gap is None else str(w.gap)
        _emit(f"x={w.factor} xl={w.multiple} w1={w.low_exp} gap={gap}\n", args.out)
        return EXIT_OK
    if args.prop41:
        if args.k is None or args.L is None:
            raise _CliError(EXIT_USAGE, "--prop41 needs --k and --L")
        l, s = _int_pair(args.prop41, "--prop41")
        res = solve_residue(l, s, args.L, args.k, strategy=args.strategy, cap=args.cap)
        for line in res.trace:
            print(line, file=sys.stderr)
        _emit(f"t={res.factor}\n", args.out)
        return EXIT_OK
    spec = _build_spec(args)
    if not isinstance(spec.core, PatternCount) or spec.transforms:
        raise _CliError(EXIT_USAGE, "--refute needs a plain pattern spec")
    n0, l = _int_pair(args.refute, "--refute")
    witness = construct_refutation(
        spec.core.pattern, spec.modulus, n0, l, strategy=args.strategy, cap=args.cap
    )
    for line in witness.trace + witness.notes:
        print(line, file=sys.stderr)
    print(f"path={witness.path}", file=sys.stderr)
    _emit(witness.report_line() + "\n", args.out)
    return EXIT_OK


def _cmd_eval(args) -> int:
    spec = _build_spec(args)
    if args.digits is None and args.partial is None:
        raise _CliError(EXIT_USAGE, "pick one of --digits or --partial")
    if args.beta < max(2, spec.modulus):
        raise _CliError(
            EXIT_BAD_RADIX, f"--beta must be at least max(2, L={spec.modulus})"
        )
    stream = DigitStream(spec, args.beta)
    if args.partial is not None:
        _emit(stream.rational_string(args.partial) + "\n", args.out)
    else:
        _emit(stream.decimal_string(args.digits) + "\n", args.out)
    return EXIT_OK


def _cmd_scan(args) -> int:
    spec = _build_spec(args)
    if args.nmax < 0 or args.lmax < 1 or args.budget < 1:
        raise _CliError(EXIT_USAGE, "--Nmax must be >= 0, --lmax and --budget >= 1")
    entries = scan_everywhere_nonperiodic(spec, args.nmax, args.lmax, args.budget)
    _emit("".join(line + "\n" for line in render_scan_report(entries)), args.out)
    if any(e.witness is None for e in entries):
        return EXIT_UNRESOLVED
    return EXIT_OK


def _int_pair(text: str, flag: str) -> tuple[int, int]:
    try:
        a, b = (int(p) for p in text.split(","))
        return a, b
    except ValueError as exc:
        raise _CliError(EXIT_USAGE, f"{flag} expects two comma-separated integers") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="autoseq", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("seq", help="print sequence values")
    _add_spec_args(p)
    p.add_argument("--from", dest="start", type=int, default=0, help="first index")
    p.add_argument("--count", type=int, default=16, help="number of values")
    p.add_argument("--verify", action="store_true", help="cross-check against direct evaluation")
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--state-cap", type=int, default=10**6)
    p.set_defaults(func=_cmd_seq)

    p = sub.add_parser("automaton", help="export the compiled machine as DOT")
    _add_spec_args(p)
    p.add_argument("--dot", action="store_true", help="emit DOT (the default and only format)")
    p.add_argument("--minimize", action="store_true", help="minimize before exporting")
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--state-cap", type=int, default=10**6)
    p.set_defaults(func=_cmd_automaton)

    p = sub.add_parser("witness", help="search for non-periodicity witnesses")
    _add_spec_args(p)
    p.add_argument("--lemma22", metavar="l,t", help="gap multiple: step l, zero run > t")
    p.add_argument("--prop41", metavar="l,s", help="digit-count residue: step l, target s")
    p.add_argument("--refute", metavar="N,l", help="refute a constant arithmetic subsequence")
    p.add_argument("--strategy", choices=("brute", "construct"), default="brute")
    p.add_argument("--cap", type=int, default=10**6, help="search budget")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("eval", help="evaluate the attached real number")
    _add_spec_args(p)
    p.add_argument("--beta", type=int, required=True, help="radix of the number")
    p.add_argument("--digits", type=int, help="print this many decimal digits")
    p.add_argument("--partial", type=int, help="print the exact partial sum of this many terms")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("scan", help="grid search for non-constancy witnesses")
    _add_spec_args(p)
    p.add_argument("--Nmax", dest="nmax", type=int, required=True)
    p.add_argument("--lmax", dest="lmax", type=int, required=True)
    p.add_argument("--budget", type=int, default=10**4)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=_cmd_scan)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except StateCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STATE_CAP
    except SearchCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEARCH_CAP
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
