import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import pair_valued_capacity  # noqa: E402

_ACCEPTANCE: list[tuple[str, str]] = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def P1():
    return pair_valued_capacity(0.5)


@pytest.fixture
def P2():
    return pair_valued_capacity(1.0 / 3.0)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if item.get_closest_marker("acceptance") and report.when == "call":
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        _ACCEPTANCE.append(("PASS" if report.passed else "FAIL", doc))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for status, doc in _ACCEPTANCE:
        terminalreporter.write_line(f"[{status}] {doc}")
