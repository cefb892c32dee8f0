"""Collects acceptance outcomes and prints one line per criterion at the end."""

import pytest

_results: dict[int, tuple[str, bool]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = dict(report.user_properties).get("criterion")
    if marker is None:
        return
    number, title = marker
    ok = report.passed
    prev = _results.get(number)
    _results[number] = (title, ok if prev is None else prev[1] and ok)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        title, ok = _results[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title}")


@pytest.fixture
def criterion(request, record_property):
    marker = request.node.get_closest_marker("acceptance")
    record_property("criterion", (marker.args[0], marker.args[1]))
    return marker.args[0]
