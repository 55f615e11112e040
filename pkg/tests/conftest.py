import time

import pytest

from scfgame.model import BASELINE

_criteria = {}
_t0 = time.perf_counter()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion checked by this test")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            _criteria.setdefault(mark.args[0], {"text": mark.args[1], "tests": []})["tests"].append(item.nodeid)


def pytest_runtest_logreport(report):
    if report.when != "call" and not report.failed:
        return
    for entry in _criteria.values():
        if report.nodeid in entry["tests"]:
            entry.setdefault("outcomes", {})[report.nodeid] = report.passed and not report.failed


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        entry = _criteria[n]
        outcomes = entry.get("outcomes", {})
        if len(outcomes) < len(entry["tests"]):
            status = "SKIP"
        else:
            status = "PASS" if all(outcomes.values()) else "FAIL"
        failed = [nid.split("::")[-1] for nid, ok in outcomes.items() if not ok]
        suffix = f"  (failing: {', '.join(failed)})" if failed else ""
        terminalreporter.write_line(f"[{status}] criterion {n}: {entry['text']}{suffix}")
    terminalreporter.write_line(f"suite wall time: {time.perf_counter() - _t0:.1f} s")


@pytest.fixture
def baseline():
    return BASELINE
