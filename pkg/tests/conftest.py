import os

import pytest
from hypothesis import HealthCheck, settings

from lcd_agc import curve as cv
from lcd_agc.gf import create_field

settings.register_profile(
    "default", max_examples=100, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SLOW = os.environ.get("LCD_AGC_SLOW") == "1"


def pytest_collection_modifyitems(config, items):
    if SLOW:
        return
    skip = pytest.mark.skip(reason="opt-in: set LCD_AGC_SLOW=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def F4():
    return create_field(2, 2)


@pytest.fixture(scope="session")
def F16():
    return create_field(2, 4)


@pytest.fixture(scope="session")
def F9():
    # rho^2 = rho + 1
    return create_field(3, 2, (2, 2, 1))


@pytest.fixture(scope="session")
def E4(F4):
    return cv.make_curve(cv.ELLIPTIC_AS, F4)


@pytest.fixture(scope="session")
def E16(F16):
    return cv.make_curve(cv.ELLIPTIC_AS, F16, c=8)


@pytest.fixture(scope="session")
def hyper4(F16):
    return cv.make_curve(cv.HYPERELLIPTIC_AS, F16, q=4)


@pytest.fixture(scope="session")
def herm3(F9):
    return cv.make_curve(cv.HERMITIAN, F9, q=3)


@pytest.fixture(scope="session")
def line16(F16):
    return cv.make_curve(cv.PROJECTIVE_LINE, F16)
