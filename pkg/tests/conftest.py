import sys

import pytest

from tpimplicit.algebra import load_fixture
from tpimplicit.fields import GF, QQ, SMALL_PRIME

FIXTURES = ("segre", "ex51", "ex52", "ex53")


@pytest.fixture(scope="session")
def segre():
    return load_fixture("segre")


@pytest.fixture(scope="session")
def ex51():
    return load_fixture("ex51")


@pytest.fixture(scope="session")
def ex52():
    return load_fixture("ex52")


@pytest.fixture(scope="session")
def ex53():
    return load_fixture("ex53")


@pytest.fixture(params=[QQ, GF(), GF(SMALL_PRIME)], ids=["QQ", "GF62", "GF31"])
def field(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(module.RESULTS):
        terminalreporter.write_line(module.format_line(k))
