import numpy as np
import pytest

_criteria = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when != "call" and not report.failed:
        return
    number, title = mark.args
    entry = _criteria.setdefault(number, {"title": title, "passed": [], "failed": []})
    key = "passed" if report.passed else "failed"
    name = item.name
    if name not in entry["passed"] + entry["failed"]:
        entry[key].append(name)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria, key=int):
        entry = _criteria[number]
        status = "FAIL" if entry["failed"] else "PASS"
        line = f"criterion {number:>2} {status}  {entry['title']}"
        if entry["failed"]:
            line += "  (failing: " + ", ".join(entry["failed"]) + ")"
        terminalreporter.write_line(line)
