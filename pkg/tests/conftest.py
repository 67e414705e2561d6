import os

import pytest

# process pools inside tests should stay small on shared runners
os.environ.setdefault("DEHNROOTS_WORKERS", "2")

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion this test covers")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    crit = getattr(report, "_criterion", None)
    if crit is None:
        return
    num, title = crit
    entry = _criteria.setdefault(num, {"title": title, "ok": True, "n": 0})
    entry["n"] += 1
    entry["ok"] &= report.passed


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        rep._criterion = (mark.args[0], mark.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        e = _criteria[num]
        status = "PASS" if e["ok"] else "FAIL"
        terminalreporter.write_line(f"criterion {num}: {status}  {e['title']} ({e['n']} tests)")
