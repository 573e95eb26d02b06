"""Correlation-based measure for two-language portfolios.

Instead of a tree, the relatedness of a language pair is given directly as a
correlation rho in [0, 1] (one minus linguistic distance).  The family
2 - rho**r is coherent for any r > 0: independent pairs (rho=0) score 2,
identical ones (rho=1) score 1, and the score falls monotonically in rho.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CorrelationError


@dataclass(frozen=True)
class PairCorrelation:
    rho: float
    exponent_r: float = 1.0

    def __post_init__(self):
        if math.isnan(self.rho) or not 0.0 <= self.rho <= 1.0:
            raise CorrelationError(f"rho out of [0, 1]: {self.rho!r}")
        if math.isnan(self.exponent_r) or not self.exponent_r > 0.0:
            raise CorrelationError(f"exponent r must be positive: {self.exponent_r!r}")


def matrix_lq(corr: PairCorrelation) -> float:
    """Effective number of languages in the pair: 2 - rho**r, always in [1, 2]."""
    return 2.0 - corr.rho**corr.exponent_r
