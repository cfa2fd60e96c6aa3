import pytest

from funsemi.groups import group_by_name, make_cyclic
from funsemi.semigroups import make_brandt


@pytest.fixture(scope="session")
def c4():
    return make_cyclic(4)


@pytest.fixture(scope="session")
def klein():
    return group_by_name("K4")


@pytest.fixture(scope="session")
def brandt22():
    return make_brandt(make_cyclic(2), 2)
