"""Command line interface.

Exit codes: 0 ok, 1 verification false, 2 input error, 3 no solution of the
admissible shape, 4 the given a1 differs from the value the family requires.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import warnings

import numpy as np

from . import nevanlinna
from .parser import ParseError, format_complex, parse_complex, parse_expr, parse_poly
from .problem import GeneralRhs, LinearRhs, PdeProblem, ProblemError
from .solver import (
    CaseTag,
    CoefficientMismatchWarning,
    SolverError,
    TheoremExcludedError,
    check_a1,
    classify_lambdas,
    solve,
)
from .verifier import verify

EXIT_OK = 0
EXIT_UNVERIFIED = 1
EXIT_INPUT = 2
EXIT_EXCLUDED = 3
EXIT_MISMATCH = 4

LINEAR_KEYS = ("lambda1", "gamma1", "lambda2", "gamma2")


class InputError(Exception):
    pass


def _complex_arg(text: str) -> complex:
    try:
        return parse_complex(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _scalar(value, key: str) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if isinstance(value, str):
        try:
            return parse_complex(value)
        except ParseError as exc:
            raise InputError(f"{key}: {exc}") from exc
    raise InputError(f"{key}: expected a number or an 'a+bi' string")


def problem_from_mapping(doc: dict) -> PdeProblem:
    """Build a problem from the keys of a problem spec file."""
    missing = [k for k in ("n", "a1", "a2", "p1", "p2") if doc.get(k) is None]
    if missing:
        raise InputError(f"missing keys: {', '.join(missing)}")
    linear = [k for k in LINEAR_KEYS if doc.get(k) is not None]
    general = [k for k in ("r", "s") if doc.get(k) is not None]
    if linear and general:
        raise InputError("give either lambda1/gamma1/lambda2/gamma2 or r/s, not both")
    try:
        n = int(doc["n"])
    except (TypeError, ValueError) as exc:
        raise InputError("n must be an integer") from exc
    if linear:
        if len(linear) != 4:
            raise InputError(f"linear right-hand side needs all of {', '.join(LINEAR_KEYS)}")
        rhs = LinearRhs(*(_scalar(doc[k], k) for k in LINEAR_KEYS))
    elif len(general) == 2:
        try:
            rhs = GeneralRhs(parse_poly(str(doc["r"])), parse_poly(str(doc["s"])))
        except ParseError as exc:
            raise InputError(f"r/s: {exc}") from exc
    else:
        raise InputError("right-hand side missing: give lambda1/gamma1/lambda2/gamma2 or r/s")
    try:
        return PdeProblem(n, *(_scalar(doc[k], k) for k in ("a1", "a2", "p1", "p2")), rhs)
    except ProblemError as exc:
        raise InputError(str(exc)) from exc


def _load_problem(args) -> PdeProblem:
    doc = {}
    if args.problem:
        try:
            with open(args.problem) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read problem file: {exc}") from exc
        if not isinstance(doc, dict):
            raise InputError("problem file must hold a JSON object")
    for key in ("n", "a1", "a2", "p1", "p2", *LINEAR_KEYS, "r", "s"):
        value = getattr(args, key)
        if value is not None:
            doc[key] = value
    return problem_from_mapping(doc)


def _add_problem_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--problem", help="JSON problem spec file")
    p.add_argument("--n", type=int)
    for key in ("a1", "a2", "p1", "p2", *LINEAR_KEYS):
        p.add_argument(f"--{key}", metavar="C")
    p.add_argument("--r", metavar="POLY")
    p.add_argument("--s", metavar="POLY")


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def cmd_classify(args) -> int:
    try:
        tag, swapped = classify_lambdas(args.lambda1, args.lambda2)
    except SolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(tag.value + (" (right-hand terms exchanged)" if swapped else ""))
    return EXIT_EXCLUDED if tag is CaseTag.NoCase else EXIT_OK


def cmd_solve(args) -> int:
    try:
        problem = _load_problem(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", CoefficientMismatchWarning)
            branches = solve(problem)
    except TheoremExcludedError as exc:
        print(f"no solution: {exc}", file=sys.stderr)
        return EXIT_EXCLUDED
    except (SolverError, ProblemError) as exc:
        code = EXIT_INPUT if isinstance(exc, ProblemError) else EXIT_EXCLUDED
        print(f"no solution: {exc}", file=sys.stderr)
        return code
    _emit([b.to_json() for b in branches])
    if not branches:
        return EXIT_EXCLUDED
    if not all(b.verified for b in branches):
        print("error: a constructed branch failed verification", file=sys.stderr)
        return EXIT_UNVERIFIED
    mismatch = check_a1(problem, branches[0].required_a1)
    if mismatch is not None:
        print(f"coefficient mismatch: required_a1 = {format_complex(mismatch.required)}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        f = parse_expr(args.function)
        problem = _load_problem(args)
    except ParseError as exc:
        print(f"error: {exc.diagnostic}", file=sys.stderr)
        return EXIT_INPUT
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.samples < 1:
        print("error: --samples must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    report = verify(f, problem, samples=args.samples, seed=args.seed)
    _emit(report.to_json())
    return EXIT_OK if report.symbolic_zero else EXIT_UNVERIFIED


def growth_csv(curve: nevanlinna.GrowthCurve) -> str:
    lines = ["r,m_estimate,stderr,log_r,log_m"]
    for r, m, se in curve.points:
        log_m = math.log(m) if m > 0 else -math.inf
        lines.append(",".join(f"{v:.17g}" for v in (r, m, se, math.log(r), log_m)))
    lines.append(
        f"# order_estimate={curve.order_estimate:.17g} "
        f"ci_halfwidth={curve.order_ci_halfwidth:.17g} growth={curve.growth_class}"
    )
    return "\n".join(lines) + "\n"


def cmd_growth(args) -> int:
    try:
        f = parse_expr(args.function)
    except ParseError as exc:
        print(f"error: {exc.diagnostic}", file=sys.stderr)
        return EXIT_INPUT
    if f.is_zero():
        print("error: the zero function has no growth curve", file=sys.stderr)
        return EXIT_INPUT
    if not 0 < args.rmin < args.rmax or args.steps < 6:
        print("error: need 0 < rmin < rmax and steps >= 6", file=sys.stderr)
        return EXIT_INPUT
    grid = np.geomspace(args.rmin, args.rmax, args.steps)
    try:
        curve = nevanlinna.order_fit(f, grid, args.samples, args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = growth_csv(curve)
    if args.out:
        try:
            with open(args.out, "w", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_INPUT
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fermat-pde",
        description="Entire solutions of a1*(df/dz1)^n + a2*f^n = p1*exp(r) + p2*exp(s).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify the relation between lambda1 and lambda2")
    p.add_argument("--lambda1", type=_complex_arg, required=True)
    p.add_argument("--lambda2", type=_complex_arg, required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("solve", help="construct and verify all solution branches")
    _add_problem_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="substitute a candidate f into the equation")
    p.add_argument("-f", "--function", required=True)
    _add_problem_flags(p)
    p.add_argument("--samples", type=int, default=256)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("growth", help="Monte Carlo growth curve and order estimate")
    p.add_argument("-f", "--function", required=True)
    p.add_argument("--rmin", type=float, default=1.0)
    p.add_argument("--rmax", type=float, default=100.0)
    p.add_argument("--steps", type=int, default=12)
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_growth)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
