"""Command-line front end: ``tamari <command> ...``."""

from __future__ import annotations

import argparse
import sys
import threading

from . import count as counting
from . import oracle
from .calculus import InvalidDerivation, SchemaError, check, from_json, render, to_json
from .focusing import decide, focus, search_focused
from .lattice import (
    DEFAULT_HASSE_LIMIT,
    FrontierMismatch,
    LimitExceeded,
    bottom,
    hasse,
    join_formula,
    meet_formula,
    to_dot,
    top,
)
from .term import ParseError, canonical_frontier, parse_formula, print_formula

STACK_BYTES = 512 * 1024 * 1024
RECURSION_LIMIT = 1_000_000


class UsageError(Exception):
    pass


def _formulas(args) -> tuple:
    return parse_formula(args.A), parse_formula(args.B)


def cmd_decide(args, out) -> int:
    A, B = _formulas(args)
    ok = decide(A, B)
    print("true" if ok else "false", file=out)
    return 0 if ok else 1


def cmd_derive(args, out) -> int:
    A, B = _formulas(args)
    D = search_focused((A,), B)
    if D is None:
        print(f"not derivable: {print_formula(A)} |- {print_formula(B)}", file=sys.stderr)
        return 1
    if args.json:
        print(to_json(D).decode("utf-8"), file=out)
    else:
        print(render(D), file=out)
    return 0


def cmd_normalize(args, out) -> int:
    if args.infile in (None, "-"):
        data = sys.stdin.read()
    else:
        with open(args.infile, encoding="utf-8") as fh:
            data = fh.read()
    D = check(from_json(data))
    print(to_json(focus(D)).decode("utf-8"), file=out)
    return 0


def cmd_join(args, out) -> int:
    print(print_formula(join_formula(*_formulas(args))), file=out)
    return 0


def cmd_meet(args, out) -> int:
    print(print_formula(meet_formula(*_formulas(args))), file=out)
    return 0


def cmd_bottom(args, out) -> int:
    print(print_formula(bottom(canonical_frontier(args.n))), file=out)
    return 0


def cmd_top(args, out) -> int:
    print(print_formula(top(canonical_frontier(args.n))), file=out)
    return 0


def _count_one(n: int, args) -> int:
    if args.formula:
        return counting.tutte_formula(n)
    if args.oracle:
        return oracle.count_intervals_oracle(n, limit=args.limit)
    return counting.intervals(n)


def cmd_count(args, out) -> int:
    if (args.n is None) == (args.upto is None):
        raise UsageError("give either n or --upto N")
    if args.upto is not None:
        ns = range(args.upto + 1)
        if args.formula or args.oracle:
            values = [_count_one(n, args) for n in ns]
        else:
            values = counting.interval_counts(args.upto)
    else:
        ns = [args.n]
        values = [_count_one(args.n, args)]
    if args.csv:
        print("n,count", file=out)
        for n, v in zip(ns, values):
            print(f"{n},{v}", file=out)
    else:
        for v in values:
            print(v, file=out)
    return 0


def cmd_series(args, out) -> int:
    R, L = counting.series_solve(args.order)
    print("R (coefficients of x^1 .. x^(n+1))", file=out)
    for n, row in enumerate(R.rows):
        coeffs = [R[n, k] for k in range(1, n + 2)]
        print(f"z^{n}: " + " ".join(map(str, coeffs)), file=out)
    print("L1", file=out)
    for n, c in enumerate(L.x_coefficient(1)):
        print(f"z^{n}: {c}", file=out)
    return 0


def cmd_hasse(args, out) -> int:
    g = hasse(canonical_frontier(args.n), limit=args.limit)
    dot = to_dot(g)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(dot)
        print(f"{len(g.nodes)} nodes, {len(g.edges)} edges -> {args.dot}", file=out)
    else:
        out.write(dot)
    return 0


def cmd_selfcheck(args, out) -> int:
    from .selfcheck import run_all

    failures = 0
    for result in run_all(args.max_size):
        print(result, file=out)
        failures += not result.ok
    print(f"{'FAILED' if failures else 'all checks passed'}", file=out)
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tamari", description="Sequent calculus for the Tamari order.")
    sub = p.add_subparsers(dest="command", required=True)

    def pair(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("A")
        sp.add_argument("B")
        sp.set_defaults(func=func)
        return sp

    pair("decide", cmd_decide, "decide A <= B (exit 0 if true, 1 if false)")
    sp = pair("derive", cmd_derive, "print the focused derivation of A |- B")
    sp.add_argument("--json", action="store_true", help="emit derivation JSON")
    pair("join", cmd_join, "least upper bound")
    pair("meet", cmd_meet, "greatest lower bound")

    sp = sub.add_parser("normalize", help="focus a derivation given as JSON")
    sp.add_argument("--in", dest="infile", metavar="FILE", help="input file (default: stdin)")
    sp.set_defaults(func=cmd_normalize)

    for name, func in (("bottom", cmd_bottom), ("top", cmd_top)):
        sp = sub.add_parser(name, help=f"{name} element over a1..a(n+1)")
        sp.add_argument("n", type=int)
        sp.set_defaults(func=func)

    sp = sub.add_parser("count", help="number of intervals in T_n")
    sp.add_argument("n", type=int, nargs="?")
    sp.add_argument("--upto", type=int, metavar="N")
    sp.add_argument("--csv", action="store_true")
    how = sp.add_mutually_exclusive_group()
    how.add_argument("--formula", action="store_true", help="use the closed form")
    how.add_argument("--oracle", action="store_true", help="brute force over tree pairs")
    sp.add_argument("--limit", type=int, default=oracle.DEFAULT_LIMIT, help="size limit for --oracle")
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("series", help="coefficient tables of R and L1")
    sp.add_argument("--order", type=int, required=True, metavar="N")
    sp.set_defaults(func=cmd_series)

    sp = sub.add_parser("hasse", help="Hasse diagram of T_n as DOT")
    sp.add_argument("n", type=int)
    sp.add_argument("--dot", metavar="FILE")
    sp.add_argument("--limit", type=int, default=DEFAULT_HASSE_LIMIT, help="maximum frontier length")
    sp.set_defaults(func=cmd_hasse)

    sp = sub.add_parser("selfcheck", help="run the oracle-equivalence suites")
    sp.add_argument("--max-size", type=int, default=4)
    sp.set_defaults(func=cmd_selfcheck)
    return p


def _run(argv, out) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    for name in ("n", "upto", "order", "max_size"):
        value = getattr(args, name, None)
        if value is not None and value < 0:
            print(f"error: {name.replace('_', '-')} must be non-negative", file=sys.stderr)
            return 2
    try:
        return args.func(args, out)
    except (ParseError, SchemaError, InvalidDerivation, FrontierMismatch, LimitExceeded,
            oracle.LimitExceeded, UsageError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main(argv=None, out=None) -> int:
    """Run the CLI in a thread with a large stack so deep derivations do not overflow."""
    argv = sys.argv[1:] if argv is None else list(argv)
    out = sys.stdout if out is None else out
    result: list = []

    def target():
        try:
            result.append(_run(argv, out))
        except BaseException as e:  # re-raised in the calling thread
            result.append(e)

    old_limit = sys.getrecursionlimit()
    old_stack = threading.stack_size()
    sys.setrecursionlimit(max(old_limit, RECURSION_LIMIT))
    threading.stack_size(STACK_BYTES)
    try:
        t = threading.Thread(target=target)
        t.start()
    finally:
        threading.stack_size(old_stack)
    t.join()
    sys.setrecursionlimit(old_limit)
    if isinstance(result[0], BaseException):
        raise result[0]
    return result[0]


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
