import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from rsphoton import NATURAL, SI, Grid

settings.register_profile("rsphoton", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("rsphoton")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture(scope="session")
def grid32():
    return Grid(32, 32.0)


@pytest.fixture(scope="session")
def grid16():
    return Grid(16, 2 * np.pi)


@pytest.fixture(params=["natural", "si"])
def units(request):
    """(constants, box length) pairs covering both unit systems."""
    return (NATURAL, 2 * np.pi) if request.param == "natural" else (SI, 1e-6)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import ACCEPTANCE

    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, summary in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'} {summary}")
