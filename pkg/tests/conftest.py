import pytest
from hypothesis import settings

from kmchev.cartan import realization_from_preset
from kmchev.weyl import WeylGroup

settings.register_profile("suite", deadline=None, max_examples=60)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def WA2():
    return WeylGroup(realization_from_preset("A2"))


@pytest.fixture(scope="session")
def WB2():
    return WeylGroup(realization_from_preset("B2"))


@pytest.fixture(scope="session")
def WG2():
    return WeylGroup(realization_from_preset("G2"))


@pytest.fixture(scope="session")
def WAFF():
    return WeylGroup(realization_from_preset("A2~"))
