import numpy as np
import pytest

from orientrep.representations import ReprScheme

ALL_SCHEMES = [
    "scalar_global",
    "scalar_local",
    "single_bin",
    "multibin:bins=2,overlap=0.1",
    "conf:bins=2",
    "conf:bins=4",
    "voting:bins=4",
    "tricosine",
]

_acceptance_lines = []


@pytest.fixture(params=ALL_SCHEMES)
def scheme(request):
    return ReprScheme.parse(request.param)


@pytest.fixture
def grid():
    return -np.pi + 2 * np.pi * np.arange(10_000) / 10_000


@pytest.fixture(scope="session")
def acceptance_log():
    return _acceptance_lines


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in _acceptance_lines:
        terminalreporter.write_line(line)
