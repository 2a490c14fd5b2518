import os

os.environ["USOCOUNT_VERIFY"] = "1"

import pytest  # noqa: E402

from usocount import linalg  # noqa: E402

_acceptance = []


@pytest.fixture(autouse=True)
def _verify_solves(monkeypatch):
    monkeypatch.setattr(linalg, "VERIFY", True)


def pytest_runtest_logreport(report):
    if (report.when == "call" or report.failed) and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, duration in _acceptance:
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{mark}  {name}  ({duration:.1f}s)")
