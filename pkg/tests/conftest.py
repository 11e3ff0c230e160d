import numpy as np
import pytest

from duffnc import DuffingParams, sweep_driven, sweep_undriven

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def undriven_records():
    return sweep_undriven(0.0, 0.8, 81, 51)


@pytest.fixture(scope="session")
def driven_records():
    return sweep_driven(DuffingParams(force=0.015, omega=1.018, time=1.0), 0.0, 0.8, 81, 51)


@pytest.fixture
def report():
    """Record a one-line verdict for the acceptance summary."""

    def _report(number, passed, detail):
        ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {detail}")
        return passed

    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def columns(records, *names):
    return [np.array([getattr(r, n) for r in records]) for n in names]
