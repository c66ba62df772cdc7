import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bathent import kernels  # noqa: E402


@pytest.fixture(params=kernels.BACKENDS)
def backend(request):
    """Run the test once per kernel backend, restoring the original afterwards."""
    previous = kernels.active_name()
    kernels.use(request.param)
    yield request.param
    kernels.use(previous)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


_acceptance: dict[str, tuple[str, float]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or report.outcome != "passed":
        name = report.nodeid.split("::")[-1]
        outcome = "XFAIL" if hasattr(report, "wasxfail") else report.outcome.upper()
        _acceptance[name] = (outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    import test_acceptance

    terminalreporter.section("acceptance criteria")
    for number, (names, label) in enumerate(test_acceptance.CRITERIA, start=1):
        names = (names,) if isinstance(names, str) else names
        results = [_acceptance.get(n, ("NOT RUN", 0.0)) for n in names]
        outcomes = {r[0] for r in results}
        if outcomes == {"PASSED"}:
            verdict = "PASS"
        elif "NOT RUN" in outcomes:
            verdict = "NOT RUN"
        else:
            verdict = "FAIL"
        note = "  [known unattainable, see xfail reason]" if "XFAIL" in outcomes else ""
        duration = sum(r[1] for r in results)
        terminalreporter.write_line(f"criterion {number:2d} {verdict:7s} {label} ({duration:.2f} s){note}")
