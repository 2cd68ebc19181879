import numpy as np
import pytest

from config import NUMCERT_SEED, NUMCERT_SUITE_SIZE


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run the full-size acceptance corpora")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng():
    return np.random.default_rng(NUMCERT_SEED)


@pytest.fixture
def suite_size():
    return NUMCERT_SUITE_SIZE
