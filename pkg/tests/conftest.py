import pytest

from ornaments import constructions


@pytest.fixture(scope="session")
def borromean_k1():
    return constructions.make_borromean(1)


@pytest.fixture(scope="session")
def borromean_k2():
    return constructions.make_borromean(2)


@pytest.fixture(scope="session")
def trivial_k1():
    return constructions.make_trivial(1)


@pytest.fixture(scope="session")
def trivial_k2():
    return constructions.make_trivial(2)
