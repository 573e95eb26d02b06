"""Two-language correlation measure: endpoints, monotonicity, input validation."""
import pytest

from langq.errors import CorrelationError
from langq.matrix import PairCorrelation, matrix_lq


def test_endpoints_exact():
    for r in (0.5, 1.0, 2.0, 7.25):
        assert matrix_lq(PairCorrelation(0.0, r)) == 2.0
        assert matrix_lq(PairCorrelation(1.0, r)) == 1.0


def test_direct_substitution():
    assert matrix_lq(PairCorrelation(0.5)) == 1.5
    assert matrix_lq(PairCorrelation(0.5, 2.0)) == 1.75


def test_monotone_decreasing_and_bounded():
    for r in (0.5, 1.0, 2.0):
        grid = [matrix_lq(PairCorrelation(i / 100, r)) for i in range(101)]
        assert all(a > b for a, b in zip(grid, grid[1:]))
        assert all(1.0 <= v <= 2.0 for v in grid)


def test_invalid_inputs_rejected():
    bad = [
        (-0.1, 1.0),
        (1.1, 1.0),
        (float("nan"), 1.0),
        (0.5, 0.0),
        (0.5, -1.0),
        (0.5, float("nan")),
    ]
    for rho, r in bad:
        with pytest.raises(CorrelationError):
            PairCorrelation(rho, r)
