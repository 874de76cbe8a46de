import pytest

from cinfer import catalog, checks
from cinfer.sets import BasicSet


@pytest.fixture(scope="session")
def base4():
    return BasicSet(("x", "y", "z", "u"))


@pytest.fixture(scope="session")
def catalog_entries():
    return catalog.entries()


@pytest.fixture(scope="session")
def sg_family():
    """All semi-graphoid bitmasks over four variables (computed once)."""
    return checks._sg_family()


@pytest.fixture(scope="session")
def ci_family():
    """All rule-closed structure bitmasks over four variables."""
    return checks._ci_family()
