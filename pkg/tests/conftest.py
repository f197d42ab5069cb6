import pytest

from circlepaint.core import FIG1, FIG2, FIG2_PILLAR_GAPS
from circlepaint.pillar import build_colouring

_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion of the build")
    config.addinivalue_line("markers", "slow: takes more than a few seconds")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or rep.when != "call":
        return
    number, title = marker.args
    _ACCEPTANCE.append((number, title, rep.outcome, getattr(item, "acceptance_note", "")))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome, note in sorted(_ACCEPTANCE):
        status = "PASS" if outcome == "passed" else "FAIL"
        line = f"[{status}] {number}. {title}"
        if note:
            line += f" -- {note}"
        terminalreporter.write_line(line)


@pytest.fixture
def fig1():
    return FIG1


@pytest.fixture
def fig2():
    return FIG2


@pytest.fixture
def fig2_state():
    return build_colouring(FIG2, FIG2_PILLAR_GAPS)
