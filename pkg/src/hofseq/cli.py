"""Command-line front end.

Exit codes: 0 success, 1 verification failure or mismatch, 2 sequence death,
3 usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
import time
from decimal import Decimal, InvalidOperation

from . import __version__
from .bfile import BFileError, first_mismatch, read_bfile, write_records, write_sequence
from .fastb import fast_b
from .prober import jump_index, scan_only_slow, verify_jump, verify_plateau, verify_step_value
from .recurrence import PRESETS, RecurrenceSpec, generate, make_preset
from .verify import (
    verify_density,
    verify_lemma_uniqueness,
    verify_r_identities,
    verify_structure,
)

EXIT_OK, EXIT_FAIL, EXIT_DEATH, EXIT_USAGE = 0, 1, 2, 3

SUITES = ("structure", "lemmas", "density", "jump", "only-slow")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_int(text: str) -> int:
    """Exact integer from "1000000", "1e6" or "1_000_000"."""
    try:
        d = Decimal(text.replace("_", ""))
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not d.is_finite() or d != d.to_integral_value():
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(d)


def parse_int_list(text: str) -> list[int]:
    return [parse_int(p) for p in text.split(",") if p.strip()]


def expand_points(tokens: list[str]) -> list[int]:
    """Expand "a..b" ranges (inclusive) and comma lists into integers."""
    out = []
    for token in tokens:
        for part in token.split(","):
            part = part.strip()
            if not part:
                continue
            if ".." in part:
                lo, hi = part.split("..", 1)
                out.extend(range(parse_int(lo), parse_int(hi) + 1))
            else:
                out.append(parse_int(part))
    return out


def add_spec_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("sequence")
    g.add_argument("--preset", choices=[x.lower() for x in PRESETS], type=str.lower)
    g.add_argument("--k", type=parse_int, help="number of terms for bk")
    g.add_argument("--n-init", type=parse_int, help="identity init length for bk/bprime")
    g.add_argument("--r", type=parse_int, help="first offset for qrs")
    g.add_argument("--s", type=parse_int, help="second offset for qrs")
    g.add_argument("--offsets", type=parse_int_list, help="custom inner offsets, e.g. 1,2,3")
    g.add_argument("--shifts", type=parse_int_list, help="custom outer shifts (default all 0)")
    g.add_argument("--init", type=parse_int_list, help="custom initial condition")


def spec_from_args(args) -> RecurrenceSpec:
    try:
        if args.preset:
            return make_preset(args.preset, k=args.k, n_init=args.n_init, r=args.r, s=args.s)
        if args.offsets and args.init:
            return RecurrenceSpec.from_offsets(args.offsets, args.init, shifts=args.shifts)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    raise UsageError("give --preset, or --offsets with --init")


@contextlib.contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def cmd_gen(args) -> int:
    spec = spec_from_args(args)
    if args.count < 1:
        raise UsageError("--count must be >= 1")
    trace = generate(spec, args.count)
    with _output(args.output) as out:
        write_sequence(out, trace.values, args.format)
        if trace.death:
            d = trace.death
            out.write(f"# died at index {d.at_index} (argument {d.offending_argument})\n")
    return EXIT_DEATH if trace.death else EXIT_OK


def cmd_fastb(args) -> int:
    points = expand_points(args.points)
    if not points:
        raise UsageError("no indices given")
    if any(n < 1 for n in points):
        raise UsageError("indices must be >= 1")
    with _output(args.output) as out:
        write_records(out, ((n, fast_b(n)) for n in points), args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    suite = args.suite
    reports = []
    if suite in ("structure", "lemmas"):
        limit = args.limit if args.limit is not None else 10**5
        if limit < 6:
            raise UsageError(f"--limit must be >= 6 for {suite}, got {limit}")
        if suite == "structure":
            reports.append(verify_structure(limit))
        else:
            reports.append(verify_lemma_uniqueness(limit))
            reports.append(verify_r_identities(limit))
    elif suite == "density":
        limit = args.limit if args.limit is not None else 10**6
        if limit < 1000:
            raise UsageError(f"--limit must be >= 1000 for density, got {limit}")
        points = [10**e for e in range(3, len(str(limit)))]
        reports.append(verify_density(points))
    elif suite == "jump":
        k = args.k if args.k is not None else 4
        if k < 4:
            raise UsageError(f"--k must be >= 4 for jump, got {k}")
        reports.append(verify_step_value(k))
        reports.append(verify_plateau(k))
        jr = verify_jump(k)
        print(f"jump k={k}: {'PASS' if jr.passed else 'FAIL'}")
        print(f"  index {jr.jump_index}: B_{k}({jr.jump_index - 1})={jr.value_before}, "
              f"B_{k}({jr.jump_index})={jr.value_at}, difference {jr.difference}")
        print(f"  first slowness violation at {jr.first_violation_index}")
        for note in jr.findings:
            print(f"  finding: {note}")
        if not jr.passed:
            reports.append(None)
    elif suite == "only-slow":
        k_max = args.k_max if args.k_max is not None else 6
        horizon = args.horizon if args.horizon is not None else 10**4
        if k_max < 4 or horizon < jump_index(k_max):
            raise UsageError(f"need --k-max >= 4 and --horizon >= {jump_index(max(k_max, 4))}")
        reports.append(scan_only_slow(k_max, horizon))

    ok = True
    for rep in reports:
        if rep is None:
            ok = False
            continue
        print(rep.summary())
        ok = ok and rep.passed
    return EXIT_OK if ok else EXIT_FAIL


def cmd_compare(args) -> int:
    try:
        records = read_bfile(args.path)
    except (OSError, BFileError) as exc:
        raise UsageError(str(exc)) from None
    if not records:
        print("empty b-file, nothing to compare")
        return EXIT_OK
    if records[0].n < 1:
        raise UsageError(f"b-file starts at index {records[0].n}; only offset 1 is supported")

    if args.fastb:
        lookup = fast_b
        label = "fast B"
    else:
        spec = spec_from_args(args)
        trace = generate(spec, records[-1].n)
        if trace.death and trace.death.at_index <= records[-1].n:
            d = trace.death
            covered = [r for r in records if r.n < d.at_index]
            bad = first_mismatch(covered, trace.term)
            if bad:
                rec, got = bad
                print(f"mismatch at n={rec.n}: file {rec.value}, computed {got}")
                return EXIT_FAIL
            print(f"sequence died at index {d.at_index} (argument {d.offending_argument}) "
                  f"before the end of the file")
            return EXIT_DEATH
        lookup = trace.term
        label = spec.name

    bad = first_mismatch(records, lookup)
    if bad:
        rec, got = bad
        print(f"mismatch at n={rec.n}: file {rec.value}, computed {got}")
        return EXIT_FAIL
    print(f"{len(records)} terms match {label} over {records[0].n}..{records[-1].n}")
    return EXIT_OK


def cmd_bench(args) -> int:
    points = expand_points(args.points)
    if not points or any(n < 1 for n in points):
        raise UsageError("bench needs indices >= 1")
    if args.repeat < 1:
        raise UsageError("--repeat must be >= 1")
    rows = []
    for n in points:
        t0 = time.perf_counter()
        for _ in range(args.repeat):
            b = fast_b(n)
        fast_t = (time.perf_counter() - t0) / args.repeat
        naive_t, agree = None, None
        if n <= args.naive_max:
            t0 = time.perf_counter()
            trace = generate(make_preset("B"), n)
            naive_t = time.perf_counter() - t0
            agree = trace.term(n) == b
        rows.append((n, b, fast_t, naive_t, agree))

    write_records(sys.stdout, ((n, b) for n, b, *_ in rows))
    print("# n\tfast_b_seconds\tnaive_seconds\tagree")
    for n, _, fast_t, naive_t, agree in rows:
        naive = f"{naive_t:.6f}" if naive_t is not None else "skipped"
        match = {None: "-", True: "yes", False: "NO"}[agree]
        print(f"# {n}\t{fast_t:.3e}\t{naive}\t{match}")
    return EXIT_FAIL if any(r[4] is False for r in rows) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hofseq", description="Hofstadter-style nested recurrences "
                     "and the slow sequence B(n) = sum_{i=1..3} B(n - B(n-i)).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate terms of a recurrence")
    add_spec_args(p)
    p.add_argument("--count", type=parse_int, required=True)
    p.add_argument("--output", "-o")
    p.add_argument("--format", choices=("bfile", "csv"), default="bfile")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("fastb", help="evaluate B(n) with the closed-form evaluator")
    p.add_argument("points", nargs="+", help="indices, comma lists or ranges a..b")
    p.add_argument("--output", "-o")
    p.add_argument("--format", choices=("bfile", "csv"), default="bfile")
    p.set_defaults(func=cmd_fastb)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--limit", type=parse_int)
    p.add_argument("--k", type=parse_int)
    p.add_argument("--k-max", type=parse_int)
    p.add_argument("--horizon", type=parse_int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compare", help="diff a b-file against computed values")
    p.add_argument("path")
    add_spec_args(p)
    p.add_argument("--fastb", action="store_true", help="compare against the fast B evaluator")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("bench", help="time fast B against the naive recurrence")
    p.add_argument("points", nargs="+")
    p.add_argument("--naive-max", type=parse_int, default=10**6,
                   help="largest n to also run naively (default 1e6)")
    p.add_argument("--repeat", type=parse_int, default=5)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"hofseq {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (argparse.ArgumentTypeError, OverflowError) as exc:
        print(f"hofseq {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
