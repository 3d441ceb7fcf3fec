"""Collects acceptance results and prints one line per criterion."""
from __future__ import annotations

_CRITERIA = {}
_RESULTS = {}


def register_criterion(key, label):
    _CRITERIA[key] = label


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    for key in _CRITERIA:
        if f"::{key}" in report.nodeid or report.nodeid.endswith(key):
            prev = _RESULTS.get(key)
            bad = report.outcome != "passed" or prev == "failed"
            _RESULTS[key] = "failed" if bad else "passed"
            break


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA):
        outcome = _RESULTS.get(key)
        if outcome is None:
            continue
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {_CRITERIA[key]}")
