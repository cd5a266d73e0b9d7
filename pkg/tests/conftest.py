import pytest

from qpeqite.synthesis import build_epsilon_net

_CRITERIA: dict[int, dict] = {}


@pytest.fixture(scope="session")
def net():
    return build_epsilon_net(10)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        number, text = marker.args
        entry = _CRITERIA.setdefault(number, {"text": text, "passed": True, "cases": 0})
        entry["cases"] += 1
        entry["passed"] &= report.passed


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        e = _CRITERIA[number]
        status = "PASS" if e["passed"] else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {e['text']} ({e['cases']} case(s))")

