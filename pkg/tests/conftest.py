import re

_RESULTS = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::" not in report.nodeid:
        return
    match = re.search(r"test_criterion_(\d+)_(\w+)", report.nodeid)
    if not match:
        return
    key = (int(match.group(1)), match.group(2).replace("_", " "))
    if report.failed:
        _RESULTS[key] = "FAIL"
    elif report.when == "call":
        _RESULTS.setdefault(key, "PASS" if report.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for (num, title), outcome in sorted(_RESULTS.items()):
        terminalreporter.write_line(f"criterion {num} ({title}): {outcome}")
