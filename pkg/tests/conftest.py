import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from clusterbench.ingest import bundled_iris_path, load_iris  # noqa: E402

_criteria = {}
_session_start = time.perf_counter()


@pytest.fixture(scope="session")
def iris():
    return load_iris(bundled_iris_path())


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = report.user_properties and dict(report.user_properties).get("criterion")
    if marker and _criteria.get(marker, "passed") == "passed":
        _criteria[marker] = report.outcome


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            number, title = mark.args
            item.user_properties.append(("criterion", (number, title)))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), outcome in sorted(_criteria.items()):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number}: {title}")
    elapsed = time.perf_counter() - _session_start
    terminalreporter.write_line(f"total session time {elapsed:.2f}s")
