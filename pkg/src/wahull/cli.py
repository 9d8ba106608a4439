"""Command-line interface.

Exit codes: 0 success, 1 negative answer, 2 unknown (budget exhausted),
3 input error.
"""
from __future__ import annotations

import argparse
import sys
import time

from . import document
from .cra import Cra, cra_to_wa, eval_cra
from .errors import BudgetExceeded, WahullError
from .generators import FAMILIES, generate
from .invariant import DEFAULT_LENGTH_BOUND, strongest_invariant
from .linalg import format_scalar
from .minimize import (
    DEFAULT_BUDGET, is_sequentializable, minimize_registers, pareto_frontier, state_register_feasible,
)
from .wa import WeightedAutomaton, equivalent_wa, eval_wa, minimize_wa
from .zariski import MODES

EXIT_OK, EXIT_NO, EXIT_UNKNOWN, EXIT_INPUT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as f:
        return f.read()


def _load_wa(path) -> WeightedAutomaton:
    obj = document.parse_document(_read(path))
    if isinstance(obj, Cra):
        return cra_to_wa(obj, obj.mode)[0]
    if not isinstance(obj, WeightedAutomaton):
        raise WahullError(f"{path}: expected a wa or cra document")
    return obj


def cmd_eval(args):
    obj = document.parse_document(_read(args.file))
    word = document.parse_word(args.word)
    if isinstance(obj, WeightedAutomaton):
        value = eval_wa(obj, word)
    elif isinstance(obj, Cra):
        value = eval_cra(obj, word)
    else:
        raise WahullError(f"{args.file}: expected a wa or cra document")
    print(format_scalar(value))
    return EXIT_OK


def cmd_minimize_wa(args):
    wa_min, _ = minimize_wa(_load_wa(args.file))
    sys.stdout.write(document.print_wa(wa_min))
    return EXIT_OK


def cmd_hull(args):
    wa = _load_wa(args.file)
    t0 = time.perf_counter()
    rep = strongest_invariant(wa, args.mode, args.length_bound)
    elapsed = time.perf_counter() - t0
    if args.report:
        sys.stdout.write(document.print_report(rep, round(elapsed, 6)))
    else:
        sys.stdout.write(document.print_zset(rep.result))
    return EXIT_OK


def cmd_reg_min(args):
    cra = minimize_registers(_load_wa(args.file), args.mode, args.length_bound)
    sys.stdout.write(document.print_cra(cra))
    return EXIT_OK


def cmd_state_reg_min(args):
    ans = state_register_feasible(_load_wa(args.file), args.n, args.k, args.mode, args.budget, args.seed)
    if ans.feasible is None:
        print(f"unknown: node budget of {args.budget} exhausted", file=sys.stderr)
        return EXIT_UNKNOWN
    if not ans.feasible:
        print(f"infeasible: no CRA with {args.n} states and {args.k} registers", file=sys.stderr)
        return EXIT_NO
    sys.stdout.write(document.print_cra(ans.witness))
    return EXIT_OK


def cmd_frontier(args):
    fr = pareto_frontier(_load_wa(args.file), args.mode, args.max_states, args.budget)
    print("states,registers")
    for n, k in fr.points:
        print(f"{n},{k}")
    if fr.unknown:
        print("undecided state counts: " + ",".join(map(str, fr.unknown)), file=sys.stderr)
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_seq_check(args):
    ok = is_sequentializable(_load_wa(args.file), args.length_bound)
    print("true" if ok else "false")
    return EXIT_OK if ok else EXIT_NO


def cmd_equiv(args):
    ok = equivalent_wa(_load_wa(args.a), _load_wa(args.b))
    print("equivalent" if ok else "not equivalent")
    return EXIT_OK if ok else EXIT_NO


def cmd_generate(args):
    sys.stdout.write(document.print_wa(generate(args.family, args.param)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wahull", description="Register minimisation of weighted automata over Q.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, fn, help_):
        s = sub.add_parser(name, help=help_)
        s.set_defaults(func=fn)
        return s

    def mode(s, default="linear"):
        s.add_argument("--mode", choices=MODES, default=default)

    def length_bound(s):
        s.add_argument("--length-bound", type=int, default=DEFAULT_LENGTH_BOUND, metavar="C")

    s = cmd("eval", cmd_eval, "evaluate a wa or cra document on a word")
    s.add_argument("file")
    s.add_argument("word", help='letters as a string ("aab") or a JSON list (\'["ab","c"]\')')

    s = cmd("minimize-wa", cmd_minimize_wa, "minimal equivalent weighted automaton")
    s.add_argument("file")

    s = cmd("hull", cmd_hull, "strongest linear/affine invariant")
    s.add_argument("file")
    mode(s)
    length_bound(s)
    s.add_argument("--report", action="store_true", help="emit a report document instead of the Z-set")

    s = cmd("reg-min", cmd_reg_min, "CRA with the least number of registers")
    s.add_argument("file")
    mode(s)
    length_bound(s)

    s = cmd("state-reg-min", cmd_state_reg_min, "CRA with at most N states and K registers")
    s.add_argument("file")
    s.add_argument("n", type=int, metavar="N")
    s.add_argument("k", type=int, metavar="K")
    mode(s)
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--seed", type=int, default=None)

    s = cmd("frontier", cmd_frontier, "optimal (states, registers) pairs as CSV")
    s.add_argument("file")
    mode(s)
    s.add_argument("--max-states", type=int, default=4)
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    s = cmd("seq-check", cmd_seq_check, "is the series realised by a sequential automaton?")
    s.add_argument("file")
    length_bound(s)

    s = cmd("equiv", cmd_equiv, "do two automata realise the same series?")
    s.add_argument("a")
    s.add_argument("b")

    s = cmd("generate", cmd_generate, "witness families")
    s.add_argument("family", choices=FAMILIES)
    s.add_argument("param", type=int)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:  # usage errors and --help
        return e.code if isinstance(e.code, int) else EXIT_INPUT
    try:
        return args.func(args)
    except BudgetExceeded as e:
        print(f"unknown: {e}", file=sys.stderr)
        return EXIT_UNKNOWN
    except (WahullError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
