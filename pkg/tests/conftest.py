import math

import pytest

from spuc import BBO, CrystalSetup

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def bbo37():
    return CrystalSetup(math.radians(37.0), 1000.0, BBO)


@pytest.fixture(scope="session")
def bbo30():
    # cut where up-conversion arcs are incomplete
    return CrystalSetup(math.radians(30.0), 1000.0, BBO)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: s.split("criterion")[1]):
            terminalreporter.write_line(line)
