import warnings

import numpy as np
import pytest

from oscopt.dynamics import RunConfig, Schedule


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def quick_cfg():
    """Short runs for unit tests; the acceptance suite uses the full horizon."""
    return RunConfig(schedule=Schedule(cycles=20.0), restarts=6, record_phases=False)


@pytest.fixture(autouse=True)
def _ratio_warnings_are_expected():
    with warnings.catch_warnings():
        warnings.filterwarnings("ignore", message="C1/Csync reaches", category=RuntimeWarning)
        yield


# (criterion number, line) pairs filled in by the acceptance suite
ACCEPTANCE_LINES: list[tuple[int, str]] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES, key=lambda item: item[0]):
            terminalreporter.write_line(line)
