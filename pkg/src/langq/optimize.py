"""Working-language bundle selection for a population of portfolios.

The cost a bundle imposes on one member is the learning effort it demands:
the LQ increase from pooling the bundle (at fluent proficiency) into the
member's portfolio.  Minimizing the summed marginal cost rewards bundles the
population can already mostly speak.  The raw aggregate objective (sum of the
pooled scores themselves) is kept behind a flag.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

from .errors import BundleProblemError
from .measure import SQRT_RANK, ExponentPolicy, lq, parse_policy
from .taxonomy import Portfolio, TaxonomyTree

EXHAUSTIVE_LIMIT = 100_000

OBJECTIVES = ("marginal", "aggregate")


@dataclass(frozen=True)
class BundleProblem:
    population: tuple[Portfolio, ...]
    candidates: tuple[str, ...]
    bundle_size: int
    policy: ExponentPolicy = SQRT_RANK
    objective: str = "marginal"

    def __post_init__(self):
        object.__setattr__(self, "population", tuple(self.population))
        object.__setattr__(self, "candidates", tuple(sorted(set(self.candidates))))
        if not self.population:
            raise BundleProblemError("population must not be empty")
        if self.bundle_size < 1:
            raise BundleProblemError(f"bundle size must be >= 1, got {self.bundle_size}")
        if self.bundle_size > len(self.candidates):
            raise BundleProblemError(
                f"bundle size {self.bundle_size} exceeds {len(self.candidates)} candidates"
            )
        if self.objective not in OBJECTIVES:
            raise BundleProblemError(f"objective must be one of {OBJECTIVES}")


@dataclass(frozen=True)
class BundleSolution:
    bundle: tuple[str, ...]
    total_cost: float
    per_member_cost: tuple[float, ...]
    method: str  # "exhaustive" | "greedy"

    def to_dict(self) -> dict:
        return {
            "bundle": list(self.bundle),
            "total_cost": self.total_cost,
            "per_member_cost": list(self.per_member_cost),
            "method": self.method,
        }


def problem_from_dict(doc: object, policy: ExponentPolicy | None = None) -> BundleProblem:
    """Parse {"population": [...], "candidates": [...], "k": int} with optional
    "policy" and "objective" keys."""
    if not isinstance(doc, dict):
        raise BundleProblemError("problem document must be an object")
    try:
        population = tuple(Portfolio.from_dict(p) for p in doc["population"])
        candidates = tuple(doc["candidates"])
        k = int(doc["k"])
    except (KeyError, TypeError, ValueError) as exc:
        raise BundleProblemError(f"bad problem document: {exc}") from None
    if policy is None:
        policy = parse_policy(doc.get("policy", "sqrt"))
    return BundleProblem(
        population=population,
        candidates=candidates,
        bundle_size=k,
        policy=policy,
        objective=doc.get("objective", "marginal"),
    )


def load_problem(path, policy: ExponentPolicy | None = None) -> BundleProblem:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise BundleProblemError(f"malformed problem file: {exc}") from None
    return problem_from_dict(doc, policy)


def bundle_cost(
    tree: TaxonomyTree, problem: BundleProblem, bundle: tuple[str, ...]
) -> list[float]:
    """Per-member cost of adopting `bundle` at fluent proficiency."""
    addition = Portfolio({name: 1.0 for name in bundle})
    costs = []
    for member in problem.population:
        pooled = lq(tree, member.union(addition), problem.policy).score
        if problem.objective == "marginal":
            pooled -= lq(tree, member, problem.policy).score
        costs.append(pooled)
    return costs


def optimize_bundle(tree: TaxonomyTree, problem: BundleProblem) -> BundleSolution:
    """Pick the feasible bundle with minimal total cost.

    Exhaustive when candidates-choose-k stays within EXHAUSTIVE_LIMIT (the
    result is then a global minimizer, ties broken by lexicographic bundle
    order); greedy forward selection otherwise.
    """
    for name in problem.candidates:
        tree.resolve_leaf(name)
    n_bundles = math.comb(len(problem.candidates), problem.bundle_size)
    if n_bundles <= EXHAUSTIVE_LIMIT:
        return _exhaustive(tree, problem)
    return _greedy(tree, problem)


def _exhaustive(tree: TaxonomyTree, problem: BundleProblem) -> BundleSolution:
    best: tuple[float, tuple[str, ...], list[float]] | None = None
    # candidates are sorted, so combinations arrive in lexicographic order and
    # strict improvement keeps the lexicographically smallest tie
    for bundle in itertools.combinations(problem.candidates, problem.bundle_size):
        costs = bundle_cost(tree, problem, bundle)
        total = math.fsum(costs)
        if best is None or total < best[0]:
            best = (total, bundle, costs)
    total, bundle, costs = best
    return BundleSolution(bundle, total, tuple(costs), "exhaustive")


def _greedy(tree: TaxonomyTree, problem: BundleProblem) -> BundleSolution:
    chosen: list[str] = []
    costs: list[float] = []
    total = 0.0
    for _ in range(problem.bundle_size):
        step_best: tuple[float, str, list[float]] | None = None
        for cand in problem.candidates:
            if cand in chosen:
                continue
            trial = tuple(sorted(chosen + [cand]))
            trial_costs = bundle_cost(tree, problem, trial)
            trial_total = math.fsum(trial_costs)
            if step_best is None or trial_total < step_best[0]:
                step_best = (trial_total, cand, trial_costs)
        total, cand, costs = step_best
        chosen = sorted(chosen + [cand])
    return BundleSolution(tuple(chosen), total, tuple(costs), "greedy")
