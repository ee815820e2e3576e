import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from polyadic import DerivedModular, FiniteTable

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def dm532():
    return DerivedModular(5, 3, 2)


@pytest.fixture
def subtraction3():
    ar = np.arange(3)
    return FiniteTable(2, 3, (ar[:, None] - ar[None, :]) % 3)


ACCEPTANCE_LINES = {}


@pytest.fixture
def acceptance():
    """Record one summary line per acceptance criterion."""

    def record(number: int, ok: bool, detail: str) -> bool:
        line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES[number] = line
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])
