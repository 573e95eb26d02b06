"""Domain exceptions. `code` feeds the machine-readable error bodies of the HTTP service."""


class LangqError(Exception):
    code = "invalid"


class TaxonomyParseError(LangqError):
    code = "taxonomy_parse"


class TaxonomyValidationError(LangqError):
    code = "taxonomy_invalid"


class PortfolioError(LangqError):
    code = "portfolio_invalid"


class UnknownLanguageError(PortfolioError):
    code = "unknown_language"

    def __init__(self, language: str):
        super().__init__(f"unknown language: {language!r}")
        self.language = language


class PolicyError(LangqError):
    code = "policy_invalid"


class CorrelationError(LangqError):
    code = "correlation_invalid"


class BundleProblemError(LangqError):
    code = "problem_invalid"
