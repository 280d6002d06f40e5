import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, limit): acceptance criterion with a time limit")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when not in ("setup", "call"):
        return
    number, title, limit = marker.args
    entry = _CRITERIA.setdefault(number, {"title": title, "limit": limit, "ok": True, "seconds": 0.0, "ran": False})
    if report.when == "call":
        entry["ran"] = True
        entry["seconds"] += report.duration
    if report.failed:
        entry["ok"] = False
    if report.skipped:
        entry["skipped"] = True


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        e = _CRITERIA[number]
        if e.get("skipped") and not e["ran"]:
            verdict = "SKIP"
        else:
            verdict = "PASS" if e["ok"] and e["seconds"] < e["limit"] else "FAIL"
        tr.write_line(f"criterion {number:2d} {verdict}  {e['title']}  ({e['seconds']:.1f}s of {e['limit']:g}s)")
