import pytest

from qtriterm.numeric import BasePoint, SeriesControl
from qtriterm.verifier import find_admissible

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def dbl():
    return SeriesControl(digits=15)


@pytest.fixture(scope="session")
def mp50():
    return SeriesControl(digits=50)


@pytest.fixture(scope="session")
def mp30():
    return SeriesControl(digits=30)


_POINTS: dict[int, BasePoint] = {}


def admissible(seed: int) -> BasePoint:
    """50-digit admissible point for ``seed`` (memoised across the session)."""
    if seed not in _POINTS:
        _POINTS[seed] = find_admissible(seed).point
    return _POINTS[seed]


@pytest.fixture(scope="session")
def points():
    return admissible


@pytest.fixture
def p0(mp50):
    return admissible(0)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
