import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(__file__).parent / "data"

_acceptance: dict[int, tuple[str, float, str]] = {}
_notes: dict[int, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(k, title): exit criterion number k")


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def note(request):
    """Attach a report line to the current criterion's summary entry."""
    k = request.node.get_closest_marker("acceptance").args[0]
    _notes[k] = []
    return _notes[k].append


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or report.when != "call":
        return
    k, title = marker.args
    _acceptance[k] = ("PASS" if report.passed else "FAIL", report.duration, title)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_acceptance):
        status, duration, title = _acceptance[k]
        terminalreporter.write_line(f"[{status}] criterion {k:>2}: {title} ({duration:.1f}s)")
        for line in _notes.get(k, []):
            terminalreporter.write_line(f"      {line}")
