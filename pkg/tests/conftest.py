import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

from motivic_poincare.corpus import bundled  # noqa: E402
from motivic_poincare.resolution import ResolutionGraph, validate  # noqa: E402

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], max_examples=60
)
settings.load_profile("default")

GRAPH_EXAMPLES = [
    "nonsingular",
    "one_divisor_2",
    "one_divisor_3",
    "two_divisors",
    "three_divisors",
    "cusp",
    "a1",
    "a3_chain",
]


def load_data(name):
    return validate(ResolutionGraph.from_dict(bundled(name)))


@pytest.fixture(params=GRAPH_EXAMPLES)
def example(request):
    return request.param, load_data(request.param)


# one summary line per acceptance criterion

_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance[report.nodeid] = report.outcome
    elif "test_acceptance.py" in report.nodeid and report.failed:
        _acceptance[report.nodeid] = "failed"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, outcome in sorted(_acceptance.items()):
        name = nodeid.split("::")[-1]
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
