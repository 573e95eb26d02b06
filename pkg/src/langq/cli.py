"""Command-line front end.

Subcommands mirror the library operations: compute, check-axioms, suggest,
matrix, optimize, serve.  Scores print with exactly 4 decimals so output can
be golden-file tested; given identical inputs and seed the output is
byte-identical.  Exit codes: 0 ok, 1 validation error, 2 axiom counterexample.
"""
from __future__ import annotations

import argparse
import json
import sys

from .errors import LangqError, PortfolioError
from .matrix import PairCorrelation, matrix_lq
from .measure import check_axioms, lq, parse_policy, suggest_next
from .optimize import load_problem, optimize_bundle
from .taxonomy import Portfolio, load_taxonomy

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_COUNTEREXAMPLE = 2


def _load_portfolio(path: str) -> Portfolio:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise PortfolioError(f"malformed portfolio file {path}: {exc}") from None
    return Portfolio.from_dict(doc)


def cmd_compute(args) -> int:
    tree = load_taxonomy(args.taxonomy)
    policy = parse_policy(args.policy)
    breakdown = lq(tree, _load_portfolio(args.portfolio), policy)
    if args.breakdown:
        print(f"{'depth':>5}  {'lambda':>8}  node")
        for name, depth, value in breakdown.rows():
            print(f"{depth:>5}  {value:8.4f}  {'  ' * depth}{name}")
    print(f"LQ = {breakdown.score:.4f}")
    return EXIT_OK


def cmd_check_axioms(args) -> int:
    tree = load_taxonomy(args.taxonomy)
    policy = parse_policy(args.policy)
    report = check_axioms(tree, policy, trials=args.trials, seed=args.seed)
    for line in report.summary_lines():
        print(line)
    if report.all_passed:
        print(f"all axioms hold ({args.trials} trials, seed {args.seed}, policy {policy.name})")
        return EXIT_OK
    print("counterexample found", file=sys.stderr)
    return EXIT_COUNTEREXAMPLE


def cmd_suggest(args) -> int:
    tree = load_taxonomy(args.taxonomy)
    policy = parse_policy(args.policy)
    ranked = suggest_next(tree, _load_portfolio(args.portfolio), top_k=args.top, policy=policy)
    for name, gain in ranked:
        print(f"{gain:.4f}  {name}")
    return EXIT_OK


def cmd_matrix(args) -> int:
    print(f"{matrix_lq(PairCorrelation(args.rho, args.r)):.4f}")
    return EXIT_OK


def cmd_optimize(args) -> int:
    tree = load_taxonomy(args.taxonomy)
    policy = parse_policy(args.policy) if args.policy else None
    problem = load_problem(args.problem, policy)
    if args.objective:
        problem = type(problem)(
            population=problem.population,
            candidates=problem.candidates,
            bundle_size=problem.bundle_size,
            policy=problem.policy,
            objective=args.objective,
        )
    solution = optimize_bundle(tree, problem)
    print(f"bundle: {', '.join(solution.bundle)}")
    print(f"method: {solution.method}")
    print(f"total cost = {solution.total_cost:.4f}")
    print("member costs: " + ", ".join(f"{c:.4f}" for c in solution.per_member_cost))
    return EXIT_OK


def cmd_serve(args) -> int:
    from .api import ApiConfig, serve

    serve(
        ApiConfig(
            taxonomy_path=args.taxonomy,
            listen_port=args.port,
            host=args.host,
            default_policy=args.policy,
            cors_origins=tuple(args.cors_origin or ["*"]),
        )
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="langq", description="Effective-number-of-languages scoring over taxonomy trees"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, portfolio=True):
        p.add_argument("--taxonomy", required=True, help="taxonomy JSON file")
        if portfolio:
            p.add_argument("--portfolio", required=True, help="portfolio JSON file")
        p.add_argument("--policy", default="sqrt", help="sqrt | identity | pow:<a>")

    p = sub.add_parser("compute", help="score a portfolio")
    add_common(p)
    p.add_argument("--breakdown", action="store_true", help="print per-node values")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("check-axioms", help="randomized coherence check")
    add_common(p, portfolio=False)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check_axioms)

    p = sub.add_parser("suggest", help="rank languages by marginal gain")
    add_common(p)
    p.add_argument("--top", type=int, default=5)
    p.set_defaults(func=cmd_suggest)

    p = sub.add_parser("matrix", help="two-language correlation measure")
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--r", type=float, default=1.0)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("optimize", help="pick a working-language bundle")
    p.add_argument("--taxonomy", required=True)
    p.add_argument("--problem", required=True, help="problem JSON file")
    p.add_argument("--policy", default=None, help="override the problem's policy")
    p.add_argument("--objective", choices=["marginal", "aggregate"], default=None)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--taxonomy", required=True)
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--policy", default="sqrt")
    p.add_argument("--cors-origin", action="append", help="allowed origin (repeatable)")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; keep 2 reserved for counterexamples
        return EXIT_OK if exc.code in (0, None) else EXIT_INVALID
    try:
        return args.func(args)
    except LangqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
