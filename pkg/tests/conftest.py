import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# criterion number -> list of (passed, detail) gathered by the acceptance tests
CRITERIA: dict[int, list[tuple[bool, str]]] = {}
TITLES = {
    1: "Welch / log-extended maxima table",
    2: "Welch / power / union maxima table",
    3: "floored log-term bound rows and row selection",
    4: "auto-correlation grid of 3,2,6,4,5,1",
    5: "bound sweep over 5..277",
    6: "property suites",
    7: "trinomial root oracle",
    8: "determinism across worker counts",
}


@pytest.fixture
def criterion():
    def record(number: int, passed: bool, detail: str = "") -> None:
        CRITERIA.setdefault(number, []).append((bool(passed), detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        results = CRITERIA[number]
        passed = all(ok for ok, _ in results)
        failures = [d for ok, d in results if not ok]
        note = f" ({len(results) - len(failures)}/{len(results)} checks)" if len(results) > 1 else ""
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'} - {TITLES[number]}{note}"
        shown = [d for _, d in results] if len(results) <= 3 else failures
        if shown:
            line += "; " + "; ".join(d for d in shown if d)
        terminalreporter.write_line(line)
