"""Command-line front end: ``eval``, ``check`` and ``phi-matrix``.

Exit codes: 0 success, 1 a check suite failed, 2 usage, parse or type error.
"""

from __future__ import annotations

import argparse
import sys

from ..config import CapExceeded, limits
from ..products import NotProjected, SelfDualityRequired, phi_matrix
from ..space import SpaceError, load_space
from ..tensor import SideError
from .evaluate import EvalError, evaluate, evaluate_text, format_value
from .parser import ParseError, parse_expression, unparse

__all__ = ["main", "parse_expression", "unparse", "evaluate", "evaluate_text", "format_value",
           "ParseError", "EvalError"]

USER_ERRORS = (ParseError, EvalError, SpaceError, SideError, CapExceeded, NotProjected,
               SelfDualityRequired, ValueError, OSError)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="circleprod", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate an expression and print its canonical form")
    ev.add_argument("--space", required=True, help="space-spec file")
    ev.add_argument("--mode", choices=("sym", "asym"), help="meaning of the bare 'o' operator")
    ev.add_argument("expr")

    ck = sub.add_parser("check", help="run the randomized invariant suites")
    ck.add_argument("--space", required=True)
    ck.add_argument("--seed", type=int, default=42)
    ck.add_argument("--max-grade", type=int, default=5)
    ck.add_argument("--trials", type=int, default=100)
    ck.add_argument("--timing", action="store_true", help="append wall time per suite")

    pm = sub.add_parser("phi-matrix", help="print the matrix of phi on the graded basis")
    pm.add_argument("--space", required=True)
    pm.add_argument("--mode", required=True, choices=("tensor", "sym", "asym"))
    pm.add_argument("--max-grade", type=int, required=True)
    return p


def _run(args) -> int:
    spec = load_space(args.space)
    if args.command == "eval":
        print(evaluate_text(args.expr, spec, args.mode))
        return 0
    if args.command == "phi-matrix":
        if args.max_grade < 0:
            raise ValueError("--max-grade must be nonnegative")
        print(phi_matrix(spec, args.mode, args.max_grade).format())
        return 0
    from ..checks import run_checks

    cap = limits().projection_grade
    if not 0 <= args.max_grade <= cap:
        raise ValueError(f"--max-grade must lie in 0..{cap}")
    report = run_checks(spec, args.seed, args.max_grade, args.trials)
    print(report.format(timing=args.timing))
    return 0 if report.ok else 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except USER_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
