#!/usr/bin/env python3
"""Score the bundled reference portfolio and show what each addition buys.

Prints the per-node aggregation table, the final score, and the marginal
gain of every language not yet in the portfolio.
"""
import argparse
import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from langq import Portfolio, load_taxonomy, lq, parse_policy, suggest_next

ROOT = pathlib.Path(__file__).resolve().parents[1]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--taxonomy", default=ROOT / "data" / "sample_taxonomy.json"
    )
    parser.add_argument(
        "--portfolio",
        default=ROOT / "data" / "portfolios" / "worked_example.json",
    )
    parser.add_argument("--policy", default="sqrt", help="sqrt | identity | pow:<a>")
    args = parser.parse_args()

    tree = load_taxonomy(args.taxonomy)
    with open(args.portfolio, encoding="utf-8") as fh:
        portfolio = Portfolio.from_dict(json.load(fh))
    policy = parse_policy(args.policy)

    breakdown = lq(tree, portfolio, policy)
    print(f"portfolio: {portfolio.entries}")
    print(f"policy:    {policy.name}\n")
    print(f"{'depth':>5}  {'lambda':>8}  node")
    for name, depth, value in breakdown.rows():
        print(f"{depth:>5}  {value:8.4f}  {'  ' * depth}{name}")
    print(f"\nLQ = {breakdown.score:.4f}")

    remaining = suggest_next(tree, portfolio, top_k=10, policy=policy)
    if remaining:
        print("\nmarginal gain of one more fluent language:")
        for name, gain in remaining:
            print(f"  {gain:.4f}  {name}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
