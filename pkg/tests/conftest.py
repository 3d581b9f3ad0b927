from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qextend.data import read_builtin  # noqa: E402
from qextend.model_io import parse_platform  # noqa: E402

# criterion label -> passed (all tests carrying the label must pass)
ACCEPTANCE_RESULTS: dict[str, bool] = {}


@pytest.fixture
def figure2c():
    return parse_platform(read_builtin("figure2c.platform")).platform


@pytest.fixture
def figure2c_text():
    return read_builtin("figure2c.platform")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion checked by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        label = mark.args[0]
        ACCEPTANCE_RESULTS[label] = ACCEPTANCE_RESULTS.get(label, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE_RESULTS, key=lambda s: int(s.split(".")[0])):
        status = "PASS" if ACCEPTANCE_RESULTS[label] else "FAIL"
        terminalreporter.write_line(f"[{status}] {label}")
