import pathlib

import pytest

from langq.taxonomy import TaxonomyTree, load_taxonomy

DATA = pathlib.Path(__file__).resolve().parents[1] / "data"
PORTFOLIOS = DATA / "portfolios"
SAMPLE_TAXONOMY = DATA / "sample_taxonomy.json"

# Reference values for the bundled sample taxonomy with the portfolio below
# under the sqrt policy, frozen from a direct arithmetic computation that
# shares no code with the engine.
WESTERN = 1.6344630680619974  # 3 ** (1 / sqrt(5))
INDO_EUROPEAN = 1.8454211280293558  # (0.5**sqrt(2) + WESTERN**sqrt(2)) ** (1 / sqrt(2))
WORKED_TOTAL = 2.845421128029356  # INDO_EUROPEAN + 1

WORKED_PORTFOLIO = {
    "Serbian": 1.0,
    "Slovene": 1.0,
    "Croatian": 1.0,
    "Chinese": 1.0,
    "English": 0.5,
}


@pytest.fixture(scope="session")
def sample_tree() -> TaxonomyTree:
    return load_taxonomy(SAMPLE_TAXONOMY)
