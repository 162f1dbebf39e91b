import re
import sys
from pathlib import Path

import pytest

from refresh_carbon.catalog import bundled_catalog_path, load_catalog

sys.path.insert(0, str(Path(__file__).parent))

_CRITERIA = {
    "a1": "closed-form indifference matches the brute-force curve scan",
    "a2": "bundled device fixtures reproduce the measured latency/power cells",
    "a3": "duty-case work ratios are float-exact (3x and 4/3)",
    "a4": "indifference time is monotone in renewable penetration",
    "a5": "calibration fixture lands in the expected decision bands",
    "a6": "composition identity and 4-die scaling",
    "a7": "LCA reference rows load and match pinned values",
    "a8": "CLI json and HTTP API return identical numbers",
}


@pytest.fixture(scope="session")
def catalog():
    return load_catalog(bundled_catalog_path())


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    outcomes = {}
    for status in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(status, []):
            nodeid = getattr(report, "nodeid", "")
            match = re.search(r"test_acceptance\.py::test_(a\d)\b", nodeid)
            if match:
                key = match.group(1)
                if status != "passed" or key not in outcomes:
                    outcomes[key] = status
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA):
        if key not in outcomes:
            continue
        verdict = "PASS" if outcomes[key] == "passed" else "FAIL"
        terminalreporter.write_line(f"{key.upper()} {verdict}: {_CRITERIA[key]}")
