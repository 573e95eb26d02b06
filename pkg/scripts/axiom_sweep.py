#!/usr/bin/env python3
"""Sweep the coherence checker across exponent policies and random trees.

For each policy, draws a batch of random taxonomies and runs the randomized
axiom suite on every one, reporting executed trials, failures, and wall time.
Useful when experimenting with new f(r) choices: a policy that dips below 1
anywhere past rank 1 shows up immediately as a subadditivity counterexample.
"""
import argparse
import pathlib
import random
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from langq import check_axioms, parse_policy, tree_from_dict
from langq.measure import AXIOM_ORDER


def random_taxonomy(rng: random.Random, max_depth: int, max_leaves: int):
    target = rng.randint(2, max_leaves)
    root = {"name": "root", "children": []}
    internals = [(root, 0)]
    serial = 0
    for _ in range(target):
        parent, pdepth = internals[rng.randrange(len(internals))]
        room = max_depth - pdepth - 1
        for _ in range(rng.randint(0, min(2, room)) if room > 0 else 0):
            serial += 1
            group = {"name": f"group{serial}", "children": []}
            parent["children"].append(group)
            pdepth += 1
            internals.append((group, pdepth))
            parent = group
        serial += 1
        parent["children"].append({"name": f"lang{serial}", "children": []})
    return tree_from_dict(root)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--policies",
        nargs="+",
        default=["sqrt", "identity", "pow:0.5", "pow:2"],
    )
    parser.add_argument("--trees", type=int, default=10)
    parser.add_argument("--trials", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-depth", type=int, default=6)
    parser.add_argument("--max-leaves", type=int, default=200)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    trees = [
        random_taxonomy(rng, args.max_depth, args.max_leaves)
        for _ in range(args.trees)
    ]
    print(
        f"{args.trees} trees (depth <= {args.max_depth}, leaves <= {args.max_leaves}), "
        f"{args.trials} trials each, seed {args.seed}\n"
    )

    any_failure = False
    for name in args.policies:
        policy = parse_policy(name)
        counts = {axiom: 0 for axiom in AXIOM_ORDER}
        failures = []
        started = time.perf_counter()
        for i, tree in enumerate(trees):
            rep = check_axioms(tree, policy, trials=args.trials, seed=args.seed + i)
            for axiom, check in rep.checks.items():
                counts[axiom] += check.trials
                if not check.passed and len(failures) < 3:
                    failures.append(f"{axiom}: {check.counterexample}")
        elapsed = time.perf_counter() - started
        status = "ok" if not failures else f"{len(failures)}+ FAILURES"
        print(f"{policy.name:<10} {elapsed:6.2f}s  {status}")
        for axiom in AXIOM_ORDER:
            print(f"    {axiom:<22} {counts[axiom]:>6} draws")
        for line in failures:
            print(f"    !! {line}")
        any_failure |= bool(failures)
    return 1 if any_failure else 0


if __name__ == "__main__":
    sys.exit(main())
