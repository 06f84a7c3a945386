import os

import pytest
from hypothesis import settings

from lrcmr import mr

settings.register_profile("default", max_examples=60, deadline=None)
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))



def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", help="also run tests marked slow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="slow; pass --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


INSTANCE1 = mr.MrParams(4, 2, 2, 2)    # (15,2,2,2,16)
INSTANCE2 = mr.MrParams(13, 1, 3, 2)   # (12,3,2,2,13)


@pytest.fixture(scope="session")
def c1():
    return mr.build_construction1(INSTANCE1)


@pytest.fixture(scope="session")
def c1_small():
    return mr.build_construction1(INSTANCE2)


@pytest.fixture(scope="session")
def qc():
    return mr.build_construction2(INSTANCE2)


@pytest.fixture(scope="session")
def c1_profile(c1):
    return mr.coset_profile(c1, INSTANCE1)


def pytest_terminal_summary(terminalreporter):
    lines = getattr(__import__("sys").modules.get("test_acceptance"), "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
