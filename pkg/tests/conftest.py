import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_criteria = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion[" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("[", 1)[1].rstrip("]")
        xfailed = hasattr(report, "wasxfail")
        status = "PASS" if report.outcome == "passed" and not xfailed else "FAIL"
        note = f" (known: {report.wasxfail})" if xfailed else ""
        _criteria.append(f"{status}  {name.replace('_', ' ')}{note}")


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for line in _criteria:
            terminalreporter.write_line(line)
