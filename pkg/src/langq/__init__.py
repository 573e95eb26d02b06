"""langq: an effective-number-of-languages (LQ) score for weighted language portfolios.

The score aggregates a portfolio bottom-up over a language classification
tree with layer-wise Minkowski norms, so related languages overlap while
languages from different families add up linearly.
"""

from .errors import (
    BundleProblemError,
    CorrelationError,
    LangqError,
    PolicyError,
    PortfolioError,
    TaxonomyParseError,
    TaxonomyValidationError,
    UnknownLanguageError,
)
from .matrix import PairCorrelation, matrix_lq
from .measure import (
    IDENTITY_RANK,
    SQRT_RANK,
    AxiomCheck,
    AxiomReport,
    ExponentPolicy,
    LqBreakdown,
    check_axioms,
    lq,
    lq_recursive,
    marginal_gain,
    parse_policy,
    power_rank,
    random_portfolio,
    suggest_next,
)
from .optimize import (
    BundleProblem,
    BundleSolution,
    load_problem,
    optimize_bundle,
    problem_from_dict,
)
from .taxonomy import (
    Portfolio,
    PortfolioSubtree,
    TaxonomyNode,
    TaxonomyTree,
    induce_subtree,
    list_languages,
    load_taxonomy,
    tree_from_dict,
    union,
)

__version__ = "0.1.0"

__all__ = [
    "AxiomCheck",
    "AxiomReport",
    "BundleProblem",
    "BundleProblemError",
    "BundleSolution",
    "CorrelationError",
    "ExponentPolicy",
    "IDENTITY_RANK",
    "LangqError",
    "LqBreakdown",
    "PairCorrelation",
    "PolicyError",
    "Portfolio",
    "PortfolioError",
    "PortfolioSubtree",
    "SQRT_RANK",
    "TaxonomyNode",
    "TaxonomyParseError",
    "TaxonomyTree",
    "TaxonomyValidationError",
    "UnknownLanguageError",
    "check_axioms",
    "induce_subtree",
    "list_languages",
    "load_problem",
    "load_taxonomy",
    "lq",
    "lq_recursive",
    "marginal_gain",
    "matrix_lq",
    "optimize_bundle",
    "parse_policy",
    "power_rank",
    "problem_from_dict",
    "random_portfolio",
    "suggest_next",
    "tree_from_dict",
    "union",
]
