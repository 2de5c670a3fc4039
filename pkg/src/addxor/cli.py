"""Command-line front end.

Exit codes: 0 for YES/HOLDS/success, 1 when the mathematical answer is
NO/FAILS, 2 if ``synth --verify`` catches a mismatch, 64 for usage errors
and 65 for malformed input.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence, TextIO

from .anf import var_names
from .errors import (
    ExprSyntaxError,
    GuardExceeded,
    ModulusError,
    TableFormatError,
    UnknownVariable,
    UnsupportedModulus,
)
from .expr import Var, render, table_of
from .expressibility import count_free_algebra, decide_algebraic, enumerate_free_algebra, table_from_json
from .identities import (
    check_identity,
    check_identity_nf,
    emit_basis,
    express_add_in_ring,
    parse_identity,
    ring_render,
    verify_commutator_formula,
    verify_ring_axioms,
)
from .synth import synthesize, synthesize_circ
from .word import Modulus

EXIT_NO = 1
EXIT_MISMATCH = 2
EXIT_USAGE = 64
EXIT_DATAERR = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _modulus(text: str) -> Modulus:
    try:
        return Modulus.from_q(int(text))
    except (ValueError, ModulusError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="addxor", description="Functions and identities of Z_q under ADD and XOR.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def qk(sp, k=True):
        sp.add_argument("--q", type=_modulus, required=True, help="modulus, a power of two")
        if k:
            sp.add_argument("--k", type=_positive, required=True, help="number of arguments")

    sp = sub.add_parser("decide", help="decide whether a truth table is ADD/XOR-expressible")
    qk(sp)
    sp.add_argument("--table", required=True, help="JSON truth table ('-' for stdin)")

    sp = sub.add_parser("synth", help="print an ADD/XOR expression for a truth table")
    qk(sp)
    sp.add_argument("--table", required=True, help="JSON truth table ('-' for stdin)")
    sp.add_argument("--verify", action="store_true", help="re-evaluate the expression and compare")

    sp = sub.add_parser("count", help="size of the free algebra F_{k,q}")
    qk(sp)

    sp = sub.add_parser("enumerate", help="list F_{k,q}: polynomial, expression, table")
    qk(sp)
    sp.add_argument("--limit", type=_positive, default=None)

    sp = sub.add_parser("check", help='check an identity "<expr> = <expr>"')
    qk(sp, k=False)
    sp.add_argument("identity")
    sp.add_argument("--nf", action="store_true", help="also decide by normal forms and cross-check")

    sp = sub.add_parser("ring", help="verify the nilpotent ring (Z_q, ^, o)")
    qk(sp, k=False)

    sp = sub.add_parser("basis", help="emit the addition-table identity basis (q=2 only)")
    qk(sp, k=False)
    return p


def _read_table(path: str, args, stdin: TextIO):
    text = stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    table = table_from_json(text)
    if table.modulus != args.q or table.arity != args.k:
        raise TableFormatError(
            f"table has q={table.modulus.q}, k={table.arity} but --q {args.q.q} --k {args.k} was given"
        )
    return table


def _decide(args, out, stdin) -> int:
    verdict = decide_algebraic(_read_table(args.table, args, stdin))
    if verdict.algebraic:
        print(f"YES  {verdict.witness.render()}", file=out)
        return 0
    print(f"NO  {verdict.failure}", file=out)
    return EXIT_NO


def _synth(args, out, stdin) -> int:
    table = _read_table(args.table, args, stdin)
    verdict = decide_algebraic(table)
    if not verdict.algebraic:
        print(f"NO  {verdict.failure}", file=out)
        return EXIT_NO
    e = synthesize(verdict.witness)
    print(render(e, var_names(args.k)), file=out)
    if args.verify:
        if table_of(e, args.q, args.k) != table:
            print("VERIFY MISMATCH", file=out)
            return EXIT_MISMATCH
        print("VERIFIED", file=out)
    return 0


def _count(args, out, stdin) -> int:
    print(count_free_algebra(args.k, args.q), file=out)
    return 0


def _enumerate(args, out, stdin) -> int:
    names = var_names(args.k)
    for n, (g, t) in enumerate(enumerate_free_algebra(args.k, args.q)):
        if args.limit is not None and n >= args.limit:
            break
        values = ",".join(str(int(v)) for v in t.values)
        print(f"{g.render(names)}\t{render(synthesize(g), names)}\t{values}", file=out)
    return 0


def _check(args, out, stdin) -> int:
    ident = parse_identity(args.identity, args.q)
    result = check_identity(ident)
    print(result.report(), file=out)
    if args.nf:
        agree = check_identity_nf(ident) == result.holds
        print(f"normal forms {'agree' if agree else 'DISAGREE'}", file=out)
        if not agree:
            return EXIT_MISMATCH
    return 0 if result.holds else EXIT_NO


def _ring(args, out, stdin) -> int:
    m = args.q
    report = verify_ring_axioms(m)
    print(f"ring (Z_{m.q}, ^, o) with x o y = 2(x & y)", file=out)
    for a in report.axioms:
        print(a.line(), file=out)
    print(f"minimal left-bracketed vanishing length: {report.left_vanishing_length}", file=out)
    print(f"nilpotency index (any bracketing): {report.nilpotency_index}", file=out)
    k = verify_commutator_formula(m)
    print(f"minimal k with [x,y] = f_k(x,y): {k}", file=out)
    print(f"x + y = {ring_render(express_add_in_ring(m))}", file=out)
    x, y = Var(0), Var(1)
    circ_ok = table_of(synthesize_circ(x, y, m), m, 2).values.tolist() == [
        ((a & b) << 1) & m.mask for a in range(m.q) for b in range(m.q)
    ]
    print(f"{'PASS' if circ_ok else 'FAIL'}  x o y expressed via + and ^", file=out)
    return 0 if report.passed and circ_ok else EXIT_NO


def _basis(args, out, stdin) -> int:
    idents = emit_basis(args.q)
    for ident in idents:
        print(ident, file=out)
    bad = [i for i in idents if not check_identity(i)]
    return EXIT_MISMATCH if bad else 0


_COMMANDS = {
    "decide": _decide,
    "synth": _synth,
    "count": _count,
    "enumerate": _enumerate,
    "check": _check,
    "ring": _ring,
    "basis": _basis,
}


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, stdin: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    stdin = sys.stdin if stdin is None else stdin
    err = sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.command](args, out, stdin)
    except UsageError as exc:
        print(f"addxor: usage error: {exc}", file=err)
        return EXIT_USAGE
    except (UnsupportedModulus, GuardExceeded, ValueError) as exc:
        if isinstance(exc, (TableFormatError, ExprSyntaxError, UnknownVariable)):
            print(f"addxor: input error: {exc}", file=err)
            return EXIT_DATAERR
        print(f"addxor: usage error: {exc}", file=err)
        return EXIT_USAGE
    except OSError as exc:
        print(f"addxor: input error: {exc}", file=err)
        return EXIT_DATAERR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
