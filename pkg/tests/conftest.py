import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

import pytest

from freelip.metric import FiniteMetricSpace


@pytest.fixture
def line012():
    return FiniteMetricSpace.from_line_points([0, 1, 2], base=0, exact=True)


@pytest.fixture
def line012_float():
    return FiniteMetricSpace.from_line_points([0, 1, 2], base=0)


def pytest_terminal_summary(terminalreporter):
    import acclog

    if acclog.LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(acclog.LINES):
            terminalreporter.write_line(line)
