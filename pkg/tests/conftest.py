import pytest

from braidquot.catalog import build


@pytest.fixture(scope="session")
def S4():
    return build("S:4")


@pytest.fixture(scope="session")
def S6():
    return build("S:6")
