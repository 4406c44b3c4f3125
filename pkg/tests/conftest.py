import pytest

from gillab.bonding import make_map
from gillab.cantor import build_family

LEVEL = 2
BUDGET = 56
CEILING = 15


@pytest.fixture(scope="session")
def family():
    return build_family(LEVEL, BUDGET, CEILING)


@pytest.fixture(scope="session")
def zero_map(family):
    return make_map("zero", family)


@pytest.fixture(scope="session")
def tent_map(family):
    return make_map("tent", family)
