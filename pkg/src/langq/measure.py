"""LQ scoring: bottom-up Minkowski aggregation over an induced subtree.

Leaves start at their proficiencies.  An internal node whose included children
sit at depth r combines them with the p-norm of order f(r), where f is the
exponent policy (sqrt of the rank by default, f(1) = 1).  The root therefore
sums the per-family values linearly, which is what makes languages from
different families independent.  The score of the empty portfolio is 0.
"""
from __future__ import annotations

import math
import random
import sys
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .errors import PolicyError, TaxonomyValidationError
from .taxonomy import (
    NodeId,
    Portfolio,
    PortfolioSubtree,
    TaxonomyTree,
    as_portfolio,
    induce_subtree,
)

REL_TOL = 1e-9
MAX_RECURSIVE_DEPTH = 10_000


@dataclass(frozen=True)
class ExponentPolicy:
    """Norm order f(r) used when combining the layer of rank r.

    All built-in kinds are powers of the rank, so f(1) = 1 holds by
    construction and f is non-decreasing, keeping every stage a proper
    Minkowski norm (order >= 1).
    """

    kind: str  # "sqrt" | "identity" | "power"
    power: float = 1.0  # exponent a for kind="power"

    def __post_init__(self):
        if self.kind not in ("sqrt", "identity", "power"):
            raise PolicyError(f"unknown exponent policy: {self.kind!r}")
        if self.kind == "power" and not self.power > 0:
            raise PolicyError(f"power policy needs a positive exponent, got {self.power!r}")

    def order(self, rank: int) -> float:
        if rank < 1:
            raise PolicyError(f"layer rank must be >= 1, got {rank}")
        if self.kind == "sqrt":
            return math.sqrt(rank)
        if self.kind == "identity":
            return float(rank)
        return float(rank) ** self.power

    @property
    def name(self) -> str:
        if self.kind == "power":
            return f"pow:{self.power:g}"
        return self.kind


SQRT_RANK = ExponentPolicy("sqrt")
IDENTITY_RANK = ExponentPolicy("identity")


def power_rank(exponent: float) -> ExponentPolicy:
    return ExponentPolicy("power", exponent)


def parse_policy(name: str) -> ExponentPolicy:
    """Parse the external policy spelling: sqrt | identity | pow:<a>."""
    if not isinstance(name, str):
        raise PolicyError(f"policy name must be a string, got {name!r}")
    if name == "sqrt":
        return SQRT_RANK
    if name == "identity":
        return IDENTITY_RANK
    if name.startswith("pow:"):
        try:
            return power_rank(float(name[4:]))
        except ValueError:
            raise PolicyError(f"bad power policy spelling: {name!r}") from None
    raise PolicyError(f"unknown policy {name!r}; expected sqrt, identity or pow:<a>")


def _require_fixed_point(policy) -> None:
    # only the fixed point is enforced here, so a test double with a broken
    # tail (f(r) < 1) can still be driven through the axiom checker
    try:
        one = policy.order(1)
    except Exception as exc:  # noqa: BLE001 - surface as a policy error
        raise PolicyError(f"policy cannot evaluate rank 1: {exc}") from None
    if abs(one - 1.0) > 1e-12:
        raise PolicyError(f"policy must satisfy f(1) = 1, got f(1) = {one!r}")


@dataclass(frozen=True)
class LqBreakdown:
    """Per-node aggregation values plus the final score (the root value)."""

    node_values: Mapping[NodeId, float]
    score: float
    policy: ExponentPolicy
    subtree: PortfolioSubtree

    def rows(self) -> Iterator[tuple[str, int, float]]:
        """(name, depth, value) rows, pre-order, children sorted by name."""
        tree = self.subtree.tree
        stack = [tree.root]
        while stack:
            nid = stack.pop()
            node = tree.nodes[nid]
            yield node.name, node.depth, self.node_values[nid]
            included = [c for c in node.children if c in self.subtree.included]
            included.sort(key=lambda c: tree.nodes[c].name, reverse=True)
            stack.extend(included)


def _combine(child_values: list[float], order: float) -> float:
    if not child_values:
        return 0.0
    if order == 1.0:
        return math.fsum(child_values)
    if len(child_values) == 1:
        return child_values[0]  # (v**p)**(1/p) exactly, for any p
    # factor out the max so large orders neither overflow nor underflow
    top = max(child_values)
    if top <= 0.0:
        return 0.0
    total = math.fsum((v / top) ** order for v in child_values)
    return top * total ** (1.0 / order)


def lq(
    tree: TaxonomyTree,
    portfolio: Portfolio | Mapping[str, float],
    policy: ExponentPolicy = SQRT_RANK,
) -> LqBreakdown:
    """Score a portfolio by layer-by-layer aggregation from the deepest leaves up."""
    _require_fixed_point(policy)
    sub = induce_subtree(tree, portfolio)
    by_depth: dict[int, list[NodeId]] = {}
    for nid in sub.included:
        by_depth.setdefault(tree.nodes[nid].depth, []).append(nid)
    values: dict[NodeId, float] = {}
    for depth in sorted(by_depth, reverse=True):
        order = policy.order(depth + 1)
        for nid in by_depth[depth]:
            if nid in sub.leaf_weights:
                values[nid] = sub.leaf_weights[nid]
            else:
                node = tree.nodes[nid]
                kids = [values[c] for c in node.children if c in sub.included]
                values[nid] = _combine(kids, order)
    return LqBreakdown(values, values[tree.root], policy, sub)


def lq_recursive(
    tree: TaxonomyTree,
    portfolio: Portfolio | Mapping[str, float],
    policy: ExponentPolicy = SQRT_RANK,
) -> LqBreakdown:
    """Same contract as lq, computed by depth-first recursion from the root."""
    _require_fixed_point(policy)
    if tree.max_depth > MAX_RECURSIVE_DEPTH:
        raise TaxonomyValidationError(
            f"tree depth {tree.max_depth} exceeds the recursive limit {MAX_RECURSIVE_DEPTH}"
        )
    sub = induce_subtree(tree, portfolio)
    needed = tree.max_depth + 100
    if sys.getrecursionlimit() < needed + 100:
        sys.setrecursionlimit(needed + 100)
    values: dict[NodeId, float] = {}

    def visit(nid: NodeId) -> float:
        node = tree.nodes[nid]
        if nid in sub.leaf_weights:
            value = sub.leaf_weights[nid]
        else:
            kids = [visit(c) for c in node.children if c in sub.included]
            value = _combine(kids, policy.order(node.depth + 1))
        values[nid] = value
        return value

    score = visit(tree.root)
    return LqBreakdown(values, score, policy, sub)


def marginal_gain(
    tree: TaxonomyTree,
    portfolio: Portfolio | Mapping[str, float],
    language: str,
    proficiency: float,
    policy: ExponentPolicy = SQRT_RANK,
) -> float:
    """Score increase from pooling one more weighted language into the portfolio.

    Lies in [0, 1] for a fluent addition; exactly 0 when the language is
    already known at the same or higher proficiency.
    """
    base = as_portfolio(portfolio)
    tree.resolve_leaf(language)
    extended = base.add(language, proficiency)
    return lq(tree, extended, policy).score - lq(tree, base, policy).score


def suggest_next(
    tree: TaxonomyTree,
    portfolio: Portfolio | Mapping[str, float],
    top_k: int = 5,
    policy: ExponentPolicy = SQRT_RANK,
) -> list[tuple[str, float]]:
    """Rank the unknown languages by fluent marginal gain; ties break by name."""
    if top_k < 1:
        raise ValueError(f"top_k must be >= 1, got {top_k}")
    base = as_portfolio(portfolio)
    spoken = set(base.active())
    base_score = lq(tree, base, policy).score
    ranked = []
    for name in tree.leaf_names():
        if name in spoken:
            continue
        gain = lq(tree, base.add(name, 1.0), policy).score - base_score
        ranked.append((name, gain))
    ranked.sort(key=lambda item: (-item[1], item[0]))
    return ranked[:top_k]


# --- coherence checking -----------------------------------------------------

AXIOM_ORDER = (
    "equivalence",
    "subadditivity",
    "no_double_counting",
    "independence",
    "proficiency_linearity",
    "sandwich",
    "monotonicity",
    "range",
)

AXIOM_LABELS = {
    "equivalence": "E: any single fluent language scores 1",
    "subadditivity": "S: score of a union never exceeds the sum of scores",
    "no_double_counting": "ND: re-adding a known language changes nothing",
    "independence": "I: a language from an unused family adds its own score",
    "proficiency_linearity": "PH: a singleton scales linearly with proficiency",
    "sandwich": "adding one fluent language adds between 0 and 1",
    "monotonicity": "raising any proficiency never lowers the score",
    "range": "N fluent languages score in [1, N]; any portfolio in [0, N]",
}


@dataclass
class AxiomCheck:
    name: str
    label: str
    passed: bool = True
    trials: int = 0
    counterexample: str | None = None

    def record(self, ok: bool, detail: str) -> None:
        self.trials += 1
        if not ok and self.passed:
            self.passed = False
            self.counterexample = detail


@dataclass
class AxiomReport:
    policy: ExponentPolicy
    seed: int
    trials: int
    checks: dict[str, AxiomCheck] = field(default_factory=dict)

    @property
    def all_passed(self) -> bool:
        return all(check.passed for check in self.checks.values())

    def summary_lines(self) -> list[str]:
        lines = []
        for check in self.checks.values():
            status = "PASS" if check.passed else "FAIL"
            line = f"{status} {check.name} ({check.trials} trials) - {check.label}"
            if check.counterexample:
                line += f"\n     counterexample: {check.counterexample}"
            lines.append(line)
        return lines


def random_portfolio(
    rng: random.Random,
    leaves: list[str],
    min_size: int = 0,
    max_size: int = 6,
    fluent: bool = False,
) -> Portfolio:
    """Deterministic random portfolio over the given leaf names."""
    size = rng.randint(min_size, min(max_size, len(leaves)))
    chosen = rng.sample(leaves, size)
    return Portfolio({name: 1.0 if fluent else rng.uniform(0.0, 1.0) for name in chosen})


def _fmt(portfolio: Portfolio) -> str:
    inner = ", ".join(f"{k}:{v:.6g}" for k, v in sorted(portfolio.entries.items()))
    return "{" + inner + "}"


def check_axioms(
    tree: TaxonomyTree,
    policy: ExponentPolicy = SQRT_RANK,
    trials: int = 1000,
    seed: int = 0,
) -> AxiomReport:
    """Randomized search for coherence violations; deterministic in (seed, trials).

    Draws `trials` portfolio pairs and checks every axiom on each draw.  All
    equalities use 1e-9 relative tolerance, inequalities get 1e-9 slack.
    Failures are reported per axiom with the first counterexample; they are
    data, not exceptions.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    _require_fixed_point(policy)
    rng = random.Random(seed)
    leaves = tree.leaf_names()
    report = AxiomReport(policy=policy, seed=seed, trials=trials)
    for name in AXIOM_ORDER:
        report.checks[name] = AxiomCheck(name, AXIOM_LABELS[name])
    checks = report.checks

    def score(p: Portfolio) -> float:
        return lq(tree, p, policy).score

    def close(a: float, b: float) -> bool:
        return math.isclose(a, b, rel_tol=REL_TOL, abs_tol=1e-12)

    for _ in range(trials):
        # draw everything up front so the stream is identical whichever
        # checks end up running
        p1 = random_portfolio(rng, leaves, min_size=1)
        p2 = random_portfolio(rng, leaves, min_size=0)
        leaf_e = rng.choice(leaves)
        leaf_ph = rng.choice(leaves)
        c_ph = rng.uniform(0.0, 1.0)
        leaf_sw = rng.choice(leaves)
        pick = rng.randrange(1 << 30)
        w_ind = rng.uniform(0.0, 1.0)
        active1 = sorted(p1.active())
        mono_delta = rng.uniform(0.0, 1.0)

        s1 = score(p1)

        # E: singletons at proficiency 1 score exactly 1
        s_e = score(Portfolio({leaf_e: 1.0}))
        checks["equivalence"].record(close(s_e, 1.0), f"lq({{{leaf_e}:1}}) = {s_e!r}")

        # S: subadditivity of the union
        s2 = score(p2)
        s_union = score(p1.union(p2))
        checks["subadditivity"].record(
            s_union <= s1 + s2 + REL_TOL,
            f"p1={_fmt(p1)} p2={_fmt(p2)} lq(union)={s_union!r} > {s1!r}+{s2!r}",
        )

        # ND: re-adding an owned language at its own weight is a no-op
        if active1:
            nd_name = active1[pick % len(active1)]
            s_nd = score(p1.add(nd_name, p1.entries[nd_name]))
            checks["no_double_counting"].record(
                close(s_nd, s1), f"p1={_fmt(p1)} re-add {nd_name}: {s_nd!r} != {s1!r}"
            )

        # I: a language from a family untouched by p1 contributes linearly
        used_families = {tree.family_of(tree.name_index[n]) for n in active1}
        outside = [
            n for n in leaves if tree.family_of(tree.name_index[n]) not in used_families
        ]
        if outside:
            ind_name = outside[pick % len(outside)]
            lhs = score(p1.add(ind_name, w_ind))
            alone = score(Portfolio({ind_name: w_ind}))
            checks["independence"].record(
                close(lhs, s1 + alone),
                f"p1={_fmt(p1)} +{ind_name}@{w_ind:.6g}: {lhs!r} != {s1!r}+{alone!r}",
            )

        # PH: singleton proficiency scales the score linearly
        lhs_ph = score(Portfolio({leaf_ph: c_ph}))
        rhs_ph = c_ph * score(Portfolio({leaf_ph: 1.0}))
        checks["proficiency_linearity"].record(
            close(lhs_ph, rhs_ph), f"lq({{{leaf_ph}:{c_ph:.6g}}}) = {lhs_ph!r} != {rhs_ph!r}"
        )

        # derived bound: one fluent addition adds a number in [0, 1]
        s_sw = score(p1.add(leaf_sw, 1.0))
        checks["sandwich"].record(
            s1 - REL_TOL <= s_sw <= s1 + 1.0 + REL_TOL,
            f"p1={_fmt(p1)} +{leaf_sw}@1: {s_sw!r} outside [{s1!r}, {s1!r}+1]",
        )

        # monotonicity in each proficiency
        if active1:
            mono_name = active1[pick % len(active1)]
            old_w = p1.entries[mono_name]
            new_w = old_w + (1.0 - old_w) * mono_delta
            bumped = Portfolio({**p1.entries, mono_name: new_w})
            s_mono = score(bumped)
            checks["monotonicity"].record(
                s_mono >= s1 - REL_TOL,
                f"p1={_fmt(p1)} {mono_name}:{old_w:.6g}->{new_w:.6g} dropped {s1!r}->{s_mono!r}",
            )

        # range: fluent portfolios of N languages land in [1, N]; weighted in [0, N]
        n_active = len(active1)
        fluent = Portfolio({name: 1.0 for name in active1})
        s_fluent = score(fluent)
        ok_fluent = (
            abs(s_fluent) <= REL_TOL
            if n_active == 0
            else 1.0 - REL_TOL <= s_fluent <= n_active + REL_TOL
        )
        ok_weighted = -REL_TOL <= s1 <= n_active + REL_TOL
        checks["range"].record(
            ok_fluent and ok_weighted,
            f"p1={_fmt(p1)} fluent={s_fluent!r} weighted={s1!r} N={n_active}",
        )

    return report
