import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from chandas.metredb import load_database  # noqa: E402


@pytest.fixture(scope="session")
def index():
    return load_database()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import CRITERIA
    except ImportError:
        return
    outcome: dict[int, bool] = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_ac" not in nodeid:
                continue
            n = int(nodeid.split("::test_ac", 1)[1][0])
            ok = status == "passed"
            outcome[n] = outcome.get(n, True) and ok
    if not outcome:
        return
    terminalreporter.section("acceptance criteria")
    for n, title in CRITERIA.items():
        if n in outcome:
            terminalreporter.write_line(f"AC{n} {'PASS' if outcome[n] else 'FAIL'}  {title}")
        else:
            terminalreporter.write_line(f"AC{n} SKIP  {title} (not run)")
