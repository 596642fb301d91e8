import numpy as np
import pytest

from biospeckle import validate_stack

# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_stack(rng, n, h, w, *, integer=True):
    if integer:
        data = rng.integers(0, 256, size=(n, h, w)).astype(np.float64)
    else:
        data = rng.uniform(0, 255, size=(n, h, w))
    return validate_stack(data)
