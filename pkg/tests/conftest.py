import random
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def rng():
    return random.Random(20100416)


# -- acceptance summary ---------------------------------------------------------------------------

ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py::test_criterion_" in report.nodeid:
        key = report.nodeid.split("::test_criterion_")[1]
        ACCEPTANCE[key] = (report.passed, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k.split("_")[0])):
        ok, secs = ACCEPTANCE[key]
        number, _, label = key.partition("_")
        terminalreporter.write_line(f"criterion {number} ({label.replace('_', ' ')}): "
                                    f"{'PASS' if ok else 'FAIL'} in {secs:.1f}s")
