"""Shared pytest hooks.

Tests marked ``@pytest.mark.criterion(id, title)`` are grouped by ``id`` and
reported as one PASS/FAIL line each at the end of the run.
"""

import pytest

_RESULTS = pytest.StashKey[dict]()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, title): acceptance criterion")
    config.stash[_RESULTS] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        cid, title = marker.args
        entry = item.config.stash[_RESULTS].setdefault(cid, [title, True, []])
        if not report.passed:
            entry[1] = False
            entry[2].append(item.name)


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_RESULTS, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")

    def order(cid):
        num = "".join(c for c in cid if c.isdigit())
        return int(num), cid

    for cid in sorted(results, key=order):
        title, ok, failed = results[cid]
        line = f"criterion {cid:<3} {'PASS' if ok else 'FAIL'}  {title}"
        if failed:
            line += f"  ({', '.join(failed)})"
        terminalreporter.write_line(line)
